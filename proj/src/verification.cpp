#include "dundee/verification.hpp"

#include <algorithm>
#include <random>

#include "dundee/oracle.hpp"
#include "dundee/rng.hpp"

namespace dundee {

namespace {

constexpr std::size_t kKeptWitnesses = 20;

std::string describe(const DeckComposition& d, int m) {
  return "deck " + braced(d.counts()) + " m=" + std::to_string(m);
}

std::vector<std::size_t> indices_where(const DeckComposition& d, int value) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] == value) out.push_back(j);
  }
  return out;
}

std::string index_list(const std::vector<std::size_t>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i] + 1);
  }
  return out + "}";
}

}  // namespace

void SuiteReport::check(bool ok, const std::string& witness) {
  ++checks;
  if (ok) return;
  ++violation_count;
  if (violations.size() < kKeptWitnesses) violations.push_back(witness);
}

void SuiteReport::merge(const SuiteReport& other) {
  checks += other.checks;
  violation_count += other.violation_count;
  for (const auto& w : other.violations) {
    if (violations.size() < kKeptWitnesses) violations.push_back(other.name + ": " + w);
  }
  for (const auto& [k, v] : other.counters) counters[other.name + "." + k] += v;
}

nlohmann::json SuiteReport::to_json() const {
  return {{"suite", name},
          {"checks", checks},
          {"violations", violation_count},
          {"witnesses", violations},
          {"counters", counters},
          {"passed", passed()}};
}

std::vector<DeckComposition> decks_up_to(int max_cards) {
  std::vector<DeckComposition> out;
  for (int c = 1; c <= max_cards; ++c) {
    for (int v = 1; v <= c + 1; ++v) {
      for (auto& d : compositions_of(v, c)) out.push_back(std::move(d));
    }
  }
  return out;
}

SuiteReport verify_adaptive_oracle(GreedyEngine& greedy, int max_cards) {
  SuiteReport r;
  r.name = "adaptive-oracle";
  for (const auto& deck : decks_up_to(max_cards)) {
    const int c = deck.total();
    const auto v = deck.size();
    for (int m = 0; m <= c; ++m) {
      const std::string where = describe(deck, m);
      const auto best = oracle::optimal_adaptive_value(deck.counts(), m, oracle::Objective::max);
      const ExactProb g = greedy.win_prob(deck, m);
      r.check(best.value == g, where + ": game-tree optimum " + best.value.get_str() +
                                   " != greedy " + g.get_str());

      if (m >= 1 && v >= 3) {
        const auto expected = indices_where(deck, deck.min());
        r.check(best.best_first_bids == expected,
                where + ": optimal first bids " + index_list(best.best_first_bids) +
                    " != minimum-count values " + index_list(expected));
      }
      if (v == 2) {
        const auto [b1, b2] = greedy_two_value_split(deck[0], deck[1], m);
        r.check(two_value_prob(deck[0], deck[1], b1, b2) == g,
                where + ": greedy split disagrees with the two-value formula");
        ExactProb top = 0;
        for (int x = 0; x <= m; ++x) top = std::max(top, two_value_prob(deck[0], deck[1], x, m - x));
        r.check(top == best.value, where + ": best two-value split != game-tree optimum");
        if (m >= 1 && best.best_first_bids.size() > indices_where(deck, deck.min()).size()) {
          ++r.counters["two_value_non_greedy_optimal_first_bids"];
        }
      }

      const auto worst = oracle::optimal_adaptive_value(deck.counts(), m, oracle::Objective::min);
      const ExactProb low = min_adaptive_prob(deck, m);
      r.check(worst.value == low, where + ": game-tree minimum " + worst.value.get_str() +
                                      " != closed form " + low.get_str());
      if (m >= 1) {
        std::vector<std::size_t> expected;
        if (!is_decided(GameState(deck, m))) {
          expected = indices_where(deck, deck.max());
        } else {
          ++r.counters["decided_positions"];
          // A first bid surely loses iff no undecided position can follow.
          for (std::size_t j = 0; j < v; ++j) {
            bool all_decided = true;
            for (std::size_t h = 0; h < v && all_decided; ++h) {
              if (h == j || deck[h] == 0) continue;
              all_decided = is_decided(GameState(remove_one(deck, h), m - 1));
            }
            if (all_decided) expected.push_back(j);
          }
        }
        r.check(worst.best_first_bids == expected,
                where + ": minimizing first bids " + index_list(worst.best_first_bids) +
                    " != predicted " + index_list(expected));
      }
    }
  }
  return r;
}

SuiteReport verify_advance_minimum(AdvanceEngine& advance, int max_cards) {
  SuiteReport r;
  r.name = "advance-minimum";
  for (const auto& deck : decks_up_to(max_cards)) {
    const int v = static_cast<int>(deck.size());
    for (int m = 1; m <= deck.total(); ++m) {
      const auto claimed = advance.minimizing_bids(deck, m);
      ExactProb low = 1;
      std::vector<BidVector> argmin;
      for (const auto& b : all_bids(v, m, 1u << 22)) {
        const ExactProb p = advance.win_prob(b, deck.counts());
        if (p < low) {
          low = p;
          argmin.clear();
        }
        if (p == low) argmin.push_back(b);
      }
      std::sort(argmin.begin(), argmin.end());
      const std::string where = describe(deck, m);
      r.check(claimed.value == low, where + ": minimum " + claimed.value.get_str() +
                                        " != enumerated " + low.get_str());
      r.check(claimed.bids == argmin, where + ": minimizer sets differ");
    }
  }
  return r;
}

SuiteReport verify_advance_oracle(AdvanceEngine& advance, int max_cards, int exhaustive_cards) {
  SuiteReport r;
  r.name = "advance-oracle";
  oracle::Limits limits;
  limits.enumeration_max_cards = std::max(limits.enumeration_max_cards, max_cards);
  for (const auto& deck : decks_up_to(max_cards)) {
    const int c = deck.total();
    for (int m = 0; m <= c; ++m) {
      const auto bids = c <= exhaustive_cards
                            ? all_bids(static_cast<int>(deck.size()), m, 1u << 22)
                            : block_canonical_bids(deck, m, 1u << 22);
      for (const auto& b : bids) {
        const ExactProb brute = oracle::brute_force_advance(b, deck.counts(), limits);
        const ExactProb fast = advance.win_prob(b, deck.counts());
        r.check(brute == fast, describe(deck, m) + " bids " + braced(b) + ": enumeration " +
                                   brute.get_str() + " != recursion " + fast.get_str());
        if (c <= exhaustive_cards && m >= 2) {
          std::vector<int> named;
          for (std::size_t i = b.size(); i-- > 0;) {
            named.insert(named.end(), static_cast<std::size_t>(b[i]), static_cast<int>(i));
          }
          r.check(oracle::brute_force_advance_sequence(named, deck.counts(), limits) == brute,
                  describe(deck, m) + " bids " + braced(b) + ": depends on naming order");
        }
      }
    }
  }
  return r;
}

namespace {

BidVector random_bid(std::mt19937_64& gen, int v, int cards) {
  const int m = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(cards) + 1));
  // Stars and bars: a uniform (v-1)-subset of m+v-1 slots marks the cuts.
  std::vector<int> slots(static_cast<std::size_t>(m + v - 1));
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(v); ++i) {
    const auto j = i + uniform_below(gen, slots.size() - i);
    std::swap(slots[i], slots[j]);
  }
  std::vector<int> cuts(slots.begin(), slots.begin() + (v - 1));
  std::sort(cuts.begin(), cuts.end());
  BidVector b;
  int prev = -1;
  for (int cut : cuts) {
    b.push_back(cut - prev - 1);
    prev = cut;
  }
  b.push_back(m + v - 1 - prev - 1);
  return b;
}

}  // namespace

SuiteReport verify_permanent_identity(AdvanceEngine& advance, int max_cards,
                                      int exhaustive_cards, std::size_t samples,
                                      std::uint64_t seed) {
  SuiteReport r;
  r.name = "permanent-identity";
  oracle::Limits limits;
  std::mt19937_64 gen(seed);
  for (const auto& deck : decks_up_to(max_cards)) {
    const int c = deck.total();
    const int v = static_cast<int>(deck.size());
    std::vector<BidVector> bids;
    // Number of bid vectors with sum <= c is C(c + v, v).
    const bool exhaustive =
        c <= exhaustive_cards || binomial(c + v, v) <= BigInt(static_cast<unsigned long>(samples));
    if (exhaustive) {
      for (int m = 0; m <= c; ++m) {
        for (auto& b : all_bids(v, m, 1u << 22)) bids.push_back(std::move(b));
      }
      ++r.counters["exhaustive_decks"];
    } else {
      for (std::size_t k = 0; k < samples; ++k) bids.push_back(random_bid(gen, v, c));
      ++r.counters["sampled_decks"];
    }
    const BigInt c_fact = factorial(c);
    for (const auto& b : bids) {
      const BigInt per = oracle::permanent_ryser(oracle::build_bid_matrix(b, deck.counts()), limits);
      const ExactProb scaled = ExactProb(c_fact) * advance.win_prob(b, deck.counts());
      r.check(scaled.get_den() == 1 && scaled.get_num() == per,
              "deck " + braced(deck.counts()) + " bids " + braced(b) + ": c! Pr = " +
                  scaled.get_str() + " but permanent = " + per.get_str());
    }
  }
  return r;
}

SuiteReport lemma_suite(GreedyEngine& greedy, int c_max, int v_max) {
  SuiteReport r;
  r.name = "lemmas";
  for (int v = 1; v <= v_max; ++v) {
    for (int c = 0; c <= c_max; ++c) {
      const auto cls = compositions_of(v, c);
      for (const auto& s : cls) {
        for (const auto& q : cls) {
          const std::string pair = "s=" + braced(s.counts()) + " q=" + braced(q.counts());

          // Product identity for every i with s_i >= 1.
          for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == 0) continue;
            const auto si = remove_one(s, i);
            const BigInt lhs = p_product(q.counts(), si.counts()) * p_product(s.counts(), q.counts());
            const BigInt rhs = s[i] * p_product(q.counts(), s.counts()) *
                               p_product(si.counts(), q.counts());
            r.check(lhs == rhs, pair + " i=" + std::to_string(i + 1) + ": product identity fails");
          }

          if (!majorizes(s, q)) continue;
          ++r.counters["majorized_pairs"];
          const BigInt pqs = p_product(q.counts(), s.counts());
          const BigInt psq = p_product(s.counts(), q.counts());
          const bool distinct = !(q == s);
          r.check(distinct ? pqs < psq : pqs <= psq,
                  pair + ": P(q,s)=" + pqs.get_str() + " vs P(s,q)=" + psq.get_str());

          for (int m = 0; m <= c; ++m) {
            const ExactProb lhs = ExactProb(pqs) * greedy.win_prob(s, m);
            const ExactProb rhs = ExactProb(psq) * greedy.win_prob(q, m);
            const std::string where = pair + " m=" + std::to_string(m);
            r.check(lhs <= rhs, where + ": weighted greedy inequality fails");
            if (!distinct) continue;
            if (v >= 3) {
              r.check(lhs < rhs, where + ": weighted greedy inequality not strict");
            } else if (v == 2) {
              ++r.counters[lhs < rhs ? "two_value_strict" : "two_value_equal"];
            }
          }
        }
      }
    }
  }
  return r;
}

SuiteReport verify_closed_forms(GreedyEngine& greedy, int qk_max, int i_max) {
  SuiteReport r;
  r.name = "closed-forms";
  for (int q = 1; q <= qk_max; ++q) {
    for (int k = 1; k <= qk_max; ++k) {
      const int raw[] = {q, k, 1};
      const ExactProb rec = greedy.full(canonicalize(raw));
      const ExactProb formula = closed_form_qk1(q, k);
      r.check(rec == formula, "g(" + std::to_string(q) + "," + std::to_string(k) +
                                  ",1): recurrence " + rec.get_str() + " != formula " +
                                  formula.get_str());
    }
  }
  for (Family f : {Family::i22, Family::i32, Family::i42, Family::i33}) {
    for (int i = family_min_index(f); i <= i_max; ++i) {
      const ExactProb rec = greedy.full(family_deck(f, i));
      const ExactProb formula = closed_form_family(f, i);
      r.check(rec == formula, family_name(f) + " i=" + std::to_string(i) + ": recurrence " +
                                  rec.get_str() + " != formula " + formula.get_str());
    }
    r.check(greedy.full(family_tail(f)) == family_constant_term(f),
            family_name(f) + ": constant term is not g of the tail deck");
  }
  return r;
}

SuiteReport verify_monotonicity(GreedyEngine& greedy, int max_cards) {
  SuiteReport r;
  r.name = "monotonicity";
  for (const auto& s : decks_up_to(max_cards)) {
    const ExactProb gs = greedy.full(s);
    const bool positive = s.min() > 0;

    // Inserting a value never hurts; strictly helps when s has no zero.
    for (int x = 0; s.total() + x <= max_cards; ++x) {
      Counts raw = s.counts();
      raw.push_back(x);
      const ExactProb gq = greedy.full(canonicalize(raw));
      const std::string where = "insert " + std::to_string(x) + " into " + braced(s.counts());
      r.check(gq >= gs, where + ": g decreased");
      if (positive) r.check(gq > gs, where + ": not strict");
    }

    // One more card of any single value never helps.
    if (s.total() < max_cards) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Counts raw = s.counts();
        ++raw[i];
        const ExactProb gq = greedy.full(canonicalize(raw));
        const std::string where = "add a card to entry " + std::to_string(i + 1) + " of " +
                                  braced(s.counts());
        r.check(gs >= gq, where + ": g increased");
        bool others_positive = true;
        for (std::size_t h = 0; h < s.size(); ++h) others_positive &= h == i || s[h] > 0;
        if (!others_positive) continue;
        if (s.size() >= 2) {
          r.check(gs > gq, where + ": not strict");
        } else {
          ++r.counters[gs > gq ? "single_value_strict" : "single_value_equal"];
        }
      }
    }

    // More rounds cannot help.
    for (int m = 1; m <= s.total(); ++m) {
      r.check(greedy.win_prob(s, m) <= greedy.win_prob(s, m - 1),
              describe(s, m) + ": g_m increased with m");
    }
  }

  // Large first entry: g(n, 2, 2) decreases towards g(2, 2) = 1/6.
  const int tail_raw[] = {2, 2};
  const ExactProb tail = greedy.full(canonicalize(tail_raw));
  ExactProb prev_gap = 1;
  for (int n : {8, 16, 32, 64}) {
    const int raw[] = {n, 2, 2};
    const ExactProb gap = greedy.full(canonicalize(raw)) - tail;
    const std::string where = "g(" + std::to_string(n) + ",2,2)";
    r.check(gap > 0, where + ": not above g(2,2)");
    r.check(gap < prev_gap, where + ": gap to g(2,2) did not shrink");
    prev_gap = gap;
  }
  r.check(prev_gap < make_rational(1, 10), "g(64,2,2) is not within 1/10 of g(2,2)");
  return r;
}

int regular_threshold(GreedyEngine& greedy, int count, const Rational& threshold, int v_max,
                      SuiteReport* report) {
  ExactProb prev = -1;
  for (int v = 1; v <= v_max; ++v) {
    const ExactProb g = greedy.full(canonicalize(Counts(static_cast<std::size_t>(v), count)));
    if (report != nullptr && v >= 2) {
      report->check(g > prev, "g(" + std::to_string(count) + "x" + std::to_string(v) +
                                  ") does not exceed the value for one fewer value");
    }
    if (g > threshold) return v;
    prev = g;
  }
  return 0;
}

}  // namespace dundee
