#include "dundee/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "CLI11.hpp"
#include "json.hpp"

#include "dundee/advance.hpp"
#include "dundee/errors.hpp"
#include "dundee/greedy.hpp"
#include "dundee/service.hpp"
#include "dundee/simulator.hpp"
#include "dundee/verification.hpp"

namespace dundee {

using nlohmann::json;

namespace {

struct Printer {
  std::ostream& out;
  int digits;
  bool as_json;

  void probability(const std::string& key, const ExactProb& p) const {
    out << key << ": " << to_fraction_string(p) << '\n';
    out << "decimal: " << to_decimal_truncated(p, digits) << '\n';
  }
  void emit(const json& j) const { out << j.dump(2) << '\n'; }
};

std::string bid_list(const std::vector<BidVector>& bids) {
  std::string s;
  for (const auto& b : bids) {
    if (!s.empty()) s += ' ';
    s += braced(b);
  }
  return s;
}

json bids_json(const BidSet& set, int digits) {
  return {{"value", to_json(set.value, digits)}, {"bids", set.bids}, {"candidates", set.candidates}};
}

// Decks (s1 >= s2 >= s3 >= 1) ordered by total, then descending.
std::vector<DeckComposition> three_value_decks(int max_cards) {
  std::vector<DeckComposition> out;
  for (int total = 3; total <= max_cards; ++total) {
    for (int a = total - 2; a >= 1; --a) {
      for (int b = std::min(a, total - a - 1); b >= 1; --b) {
        const int c = total - a - b;
        if (c >= 1 && c <= b) out.push_back(DeckComposition::canonical(std::vector<int>{a, b, c}));
      }
    }
  }
  return out;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of the card game Dundee", "dundee"};
  app.require_subcommand(1);
  app.fallthrough();
  int digits = kDefaultDigits;
  bool as_json = false;
  app.add_option("--digits", digits, "Decimal digits to print (truncated)")->check(CLI::Range(0, 200));
  app.add_flag("--json", as_json, "Emit JSON instead of text");

  std::function<int()> action;
  Printer p{out, digits, as_json};
  auto fresh = [&]() -> const Printer& {
    p.digits = digits;
    p.as_json = as_json;
    return p;
  };

  // greedy
  std::string deck_text, bid_text, strategy_text = "greedy";
  std::optional<int> rounds;
  auto* greedy_cmd = app.add_subcommand("greedy", "Win probability of greedy (optimal) adaptive play");
  greedy_cmd->add_option("--deck", deck_text, "Deck, e.g. 4x13 or 5,3,2")->required();
  greedy_cmd->add_option("--rounds", rounds, "Rounds to survive (default: all cards)");
  greedy_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      const auto deck = canonicalize(parse_counts(deck_text));
      const int m = rounds.value_or(deck.total());
      GreedyEngine engine;
      const auto start = std::chrono::steady_clock::now();
      const ExactProb g = engine.win_prob(deck, m);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (pr.as_json) {
        pr.emit({{"deck", deck.counts()}, {"rounds", m}, {"probability", to_json(g, pr.digits)},
                 {"states", engine.memo_size()}, {"millis", ms}});
      } else {
        out << "deck: " << deck.to_string() << "\nrounds: " << m << '\n';
        pr.probability("probability", g);
      }
      return kExitOk;
    };
  });

  // advance
  auto* advance_cmd = app.add_subcommand("advance", "Win probability of a bid committed in advance");
  advance_cmd->add_option("--deck", deck_text, "Deck, in value order")->required();
  advance_cmd->add_option("--bid", bid_text, "Bid counts per value, e.g. 4x13")->required();
  advance_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      const Counts counts = parse_counts(deck_text);
      const Counts bids = parse_counts(bid_text);
      AdvanceEngine engine;
      const ExactProb value = engine.win_prob(bids, counts);
      if (pr.as_json) {
        pr.emit({{"deck", counts}, {"bid", bids}, {"probability", to_json(value, pr.digits)},
                 {"states", engine.memo_size()}});
      } else {
        out << "deck: " << format_counts(counts) << "\nbid: " << format_counts(bids) << '\n';
        pr.probability("probability", value);
      }
      return kExitOk;
    };
  });

  // optimal-bids
  bool expand = false;
  int rounds_req = 0;
  auto* optimal_cmd = app.add_subcommand("optimal-bids", "All optimal advance bids");
  optimal_cmd->add_option("--deck", deck_text, "Deck")->required();
  optimal_cmd->add_option("--rounds", rounds_req, "Rounds")->required();
  optimal_cmd->add_flag("--expand-orbits", expand, "List every rearrangement within equal counts");
  optimal_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      const auto deck = canonicalize(parse_counts(deck_text));
      AdvanceEngine engine;
      const BidSet best = engine.optimal_bids(deck, rounds_req, expand);
      if (pr.as_json) {
        json j = bids_json(best, pr.digits);
        j["deck"] = deck.counts();
        j["rounds"] = rounds_req;
        pr.emit(j);
      } else {
        out << "deck: " << deck.to_string() << "\nrounds: " << rounds_req << '\n';
        pr.probability("value", best.value);
        out << "bids: " << bid_list(best.bids) << '\n';
      }
      return kExitOk;
    };
  });

  // min
  bool min_advance = false;
  auto* min_cmd = app.add_subcommand("min", "Smallest win probability over all strategies");
  min_cmd->add_option("--deck", deck_text, "Deck")->required();
  min_cmd->add_option("--rounds", rounds_req, "Rounds")->required();
  min_cmd->add_flag("--advance", min_advance, "Minimize over advance bids, listing the minimizers");
  min_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      const auto deck = canonicalize(parse_counts(deck_text));
      if (min_advance) {
        AdvanceEngine engine;
        const BidSet worst = engine.minimizing_bids(deck, rounds_req);
        if (pr.as_json) {
          json j = bids_json(worst, pr.digits);
          j["deck"] = deck.counts();
          j["rounds"] = rounds_req;
          pr.emit(j);
        } else {
          out << "deck: " << deck.to_string() << "\nrounds: " << rounds_req << '\n';
          pr.probability("minimum", worst.value);
          out << "bids: " << bid_list(worst.bids) << '\n';
        }
      } else {
        const ExactProb value = min_adaptive_prob(deck, rounds_req);
        const bool decided = is_decided(GameState(deck, rounds_req));
        if (pr.as_json) {
          pr.emit({{"deck", deck.counts()}, {"rounds", rounds_req},
                   {"minimum", to_json(value, pr.digits)}, {"decided", decided}});
        } else {
          out << "deck: " << deck.to_string() << "\nrounds: " << rounds_req
              << "\ndecided: " << (decided ? "yes" : "no") << '\n';
          pr.probability("minimum", value);
        }
      }
      return kExitOk;
    };
  });

  // table
  auto* table_cmd = app.add_subcommand("table", "Print reference tables");
  table_cmd->require_subcommand(1);
  int s_count = 4, v_max = 10, table_digits = 4, max_cards = 11;
  bool exact = false;
  auto* regular_cmd = table_cmd->add_subcommand("greedy-regular", "g(s,...,s) for v = 2..v-max");
  regular_cmd->add_option("--s", s_count, "Copies of each value")->check(CLI::Range(1, 1000));
  regular_cmd->add_option("--v-max", v_max, "Largest number of values")->check(CLI::Range(2, 1000));
  regular_cmd->add_option("--table-digits", table_digits, "Decimal digits per entry")->check(CLI::Range(1, 200));
  regular_cmd->add_flag("--exact", exact, "Also print exact fractions");
  regular_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      GreedyEngine engine;
      json rows = json::array();
      for (int v = 2; v <= v_max; ++v) {
        const ExactProb g = engine.full(DeckComposition::canonical(Counts(v, s_count)));
        if (pr.as_json) {
          rows.push_back({{"v", v}, {"probability", to_json(g, table_digits)}});
        } else {
          out << v << ' ' << to_decimal_truncated(g, table_digits);
          if (exact) out << ' ' << to_fraction_string(g);
          out << '\n';
        }
      }
      if (pr.as_json) pr.emit({{"s", s_count}, {"rows", rows}});
      return kExitOk;
    };
  });
  auto* table_bids_cmd = table_cmd->add_subcommand("optimal-bids", "Optimal advance bids of 3-value decks");
  table_bids_cmd->add_option("--max-cards", max_cards, "Largest deck size")->check(CLI::Range(3, 40));
  table_bids_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      AdvanceEngine engine;
      json rows = json::array();
      for (const auto& deck : three_value_decks(max_cards)) {
        const BidSet best = engine.optimal_bids(deck, deck.total());
        if (pr.as_json) {
          rows.push_back({{"deck", deck.counts()}, {"bids", best.bids}, {"value", to_json(best.value, pr.digits)}});
        } else {
          out << braced(deck.counts()) << ": " << bid_list(best.bids) << '\n';
        }
      }
      if (pr.as_json) pr.emit({{"rows", rows}});
      return kExitOk;
    };
  });

  // simulate
  std::uint64_t trials = 100000, seed = 1;
  unsigned workers = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of a strategy (JSON report)");
  sim_cmd->add_option("--deck", deck_text, "Deck, in value order")->required();
  sim_cmd->add_option("--rounds", rounds, "Rounds (default: all cards)");
  sim_cmd->add_option("--strategy", strategy_text,
                      "greedy | anti-greedy | advance:<bids> | sequence:<1-based values>");
  sim_cmd->add_option("--trials", trials, "Number of games")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  sim_cmd->add_option("--seed", seed, "PRNG seed");
  sim_cmd->add_option("--workers", workers, "Worker threads (0: hardware concurrency)");
  sim_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      const Counts counts = parse_counts(deck_text);
      const int m = rounds.value_or(sum_of(counts));
      const StrategySpec strategy = StrategySpec::parse(strategy_text);
      SimReport report = simulate(counts, m, strategy, trials, seed, workers);
      GreedyEngine greedy;
      AdvanceEngine advance;
      report.exact_reference = exact_reference(counts, m, strategy, greedy, advance);
      json j = report.to_json();
      if (report.exact_reference) j["exact_reference"] = to_json(*report.exact_reference, pr.digits);
      pr.emit(j);
      return kExitOk;
    };
  });

  // verify
  std::string suite = "all";
  int verify_cards = 0, exhaustive_cards = 6, qk_max = 12, i_max = 30, lemma_v_max = 5;
  std::size_t samples = 1000;
  auto* verify_cmd = app.add_subcommand("verify", "Run an exhaustive verification suite");
  verify_cmd->add_option("--suite", suite, "Which suite")
      ->check(CLI::IsMember({"oracle", "min", "advance-oracle", "permanent", "lemmas", "closed-forms",
                             "monotonicity", "all"}));
  verify_cmd->add_option("--max-cards", verify_cards, "Largest deck size (suite default when 0)")
      ->check(CLI::Range(0, 40));
  verify_cmd->add_option("--exhaustive-cards", exhaustive_cards, "Deck size up to which every bid is checked");
  verify_cmd->add_option("--samples", samples, "Random bids per deck beyond the exhaustive size");
  verify_cmd->add_option("--seed", seed, "Sampling seed");
  verify_cmd->add_option("--v-max", lemma_v_max, "Lemma suite: largest number of values");
  verify_cmd->add_option("--qk-max", qk_max, "Closed forms: largest q and k");
  verify_cmd->add_option("--i-max", i_max, "Closed forms: largest family index");
  verify_cmd->callback([&] {
    action = [&] {
      const auto& pr = fresh();
      GreedyEngine greedy;
      AdvanceEngine advance;
      auto cards = [&](int fallback) { return verify_cards > 0 ? verify_cards : fallback; };
      std::vector<SuiteReport> reports;
      const bool all = suite == "all";
      if (all || suite == "oracle") reports.push_back(verify_adaptive_oracle(greedy, cards(8)));
      if (all || suite == "min") reports.push_back(verify_advance_minimum(advance, cards(8)));
      if (all || suite == "advance-oracle") {
        reports.push_back(verify_advance_oracle(advance, cards(8), std::min(exhaustive_cards, cards(8))));
      }
      if (all || suite == "permanent") {
        reports.push_back(verify_permanent_identity(advance, cards(9), exhaustive_cards, samples, seed));
      }
      if (all || suite == "lemmas") reports.push_back(lemma_suite(greedy, cards(7), lemma_v_max));
      if (all || suite == "closed-forms") reports.push_back(verify_closed_forms(greedy, qk_max, i_max));
      if (all || suite == "monotonicity") reports.push_back(verify_monotonicity(greedy, cards(8)));

      bool passed = true;
      json j = json::array();
      for (const auto& r : reports) {
        passed = passed && r.passed();
        if (pr.as_json) {
          j.push_back(r.to_json());
          continue;
        }
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checks << " checks, "
            << r.violation_count << " violations\n";
        for (const auto& [name, n] : r.counters) out << "  " << name << ": " << n << '\n';
        for (const auto& w : r.violations) out << "  violation: " << w << '\n';
      }
      if (pr.as_json) pr.emit(j);
      return passed ? kExitOk : kExitVerification;
    };
  });

  // serve
  ServeOptions serve_options;
  std::string static_dir, snapshot;
  auto* serve_cmd = app.add_subcommand("serve", "Run the advisor HTTP service");
  serve_cmd->add_option("--port", serve_options.port, "Port (default: DUNDEE_PORT, else 8080)")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", serve_options.host, "Bind address");
  serve_cmd->add_option("--static", static_dir, "Directory of UI assets to serve at /");
  serve_cmd->add_option("--snapshot", snapshot, "File that keeps sessions across restarts");
  serve_cmd->callback([&] {
    action = [&] {
      if (!static_dir.empty()) serve_options.static_dir = static_dir;
      if (!snapshot.empty()) serve_options.snapshot = snapshot;
      return serve(serve_options);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const NotationError& e) {
    err << "notation error: " << e.what() << '\n';
    return kExitNotation;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace dundee
