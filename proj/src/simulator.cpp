#include "dundee/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "dundee/advance.hpp"
#include "dundee/errors.hpp"
#include "dundee/greedy.hpp"
#include "dundee/rng.hpp"

namespace dundee {

StrategySpec StrategySpec::parse(std::string_view text) {
  StrategySpec s;
  if (text == "greedy") return s;
  if (text == "anti-greedy") {
    s.kind = Kind::anti_greedy;
    return s;
  }
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  if (colon != std::string_view::npos && head == "advance") {
    s.kind = Kind::advance;
    s.bids = parse_counts(text.substr(colon + 1));
    for (std::size_t i = 0; i < s.bids.size(); ++i) {
      s.named.insert(s.named.end(), static_cast<std::size_t>(s.bids[i]), static_cast<int>(i));
    }
    return s;
  }
  if (colon != std::string_view::npos && head == "sequence") {
    s.kind = Kind::sequence;
    for (int v : parse_counts(text.substr(colon + 1))) {
      if (v < 1) throw NotationError("sequence values are 1-based");
      s.named.push_back(v - 1);
    }
    return s;
  }
  throw NotationError("unknown strategy '" + std::string(text) +
                      "': expected greedy, anti-greedy, advance:<bids> or sequence:<values>");
}

std::string StrategySpec::to_string() const {
  switch (kind) {
    case Kind::greedy:
      return "greedy";
    case Kind::anti_greedy:
      return "anti-greedy";
    case Kind::advance:
      return "advance:" + format_counts(bids);
    case Kind::sequence: {
      std::string out = "sequence:";
      for (std::size_t i = 0; i < named.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(named[i] + 1);
      }
      return out;
    }
  }
  return "?";
}

void StrategySpec::validate(std::span<const int> counts, int m) const {
  if (kind == Kind::advance && bids.size() != counts.size()) {
    throw DomainError("advance bid must have one entry per deck value");
  }
  if (static_cast<int>(named.size()) > m) {
    throw DomainError("strategy names " + std::to_string(named.size()) +
                      " bids but the game has only " + std::to_string(m) + " rounds");
  }
  for (int v : named) {
    if (v < 0 || static_cast<std::size_t>(v) >= counts.size()) {
      throw DomainError("strategy names a value outside the deck");
    }
  }
}

nlohmann::json SimReport::to_json() const {
  nlohmann::json j = {{"trials", trials},   {"wins", wins},     {"estimate", estimate},
                      {"stderr", std_error}, {"seed", seed},     {"prng", prng},
                      {"strategy", strategy}};
  j["exact_reference"] = exact_reference ? dundee::to_json(*exact_reference) : nlohmann::json();
  return j;
}

namespace {

// One game; `cards` is reshuffled in place.
bool play_once(std::vector<int>& cards, Counts& left, int m, const StrategySpec& strategy,
               std::mt19937_64& gen) {
  for (std::size_t i = cards.size(); i > 1; --i) {
    std::swap(cards[i - 1], cards[uniform_below(gen, i)]);
  }
  for (int round = 0; round < m; ++round) {
    int bid = -1;
    switch (strategy.kind) {
      case StrategySpec::Kind::greedy:
        bid = static_cast<int>(std::min_element(left.begin(), left.end()) - left.begin());
        break;
      case StrategySpec::Kind::anti_greedy:
        bid = static_cast<int>(std::max_element(left.begin(), left.end()) - left.begin());
        break;
      case StrategySpec::Kind::advance:
      case StrategySpec::Kind::sequence:
        if (static_cast<std::size_t>(round) < strategy.named.size()) bid = strategy.named[round];
        break;
    }
    const int drawn = cards[static_cast<std::size_t>(round)];
    if (drawn == bid) return false;
    --left[static_cast<std::size_t>(drawn)];
  }
  return true;
}

}  // namespace

SimReport simulate(std::span<const int> counts, int m, const StrategySpec& strategy,
                   std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (counts.empty()) throw DomainError("deck must have at least one value");
  for (int x : counts) {
    if (x < 0) throw DomainError("deck counts must be non-negative");
  }
  if (m < 0 || m > sum_of(counts)) {
    throw DomainError("rounds must lie between 0 and the number of cards");
  }
  if (trials < 1) throw DomainError("at least one trial is required");
  strategy.validate(counts, m);

  std::vector<int> deck;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    deck.insert(deck.end(), static_cast<std::size_t>(counts[i]), static_cast<int>(i));
  }

  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> wins{0};
  auto work = [&] {
    std::vector<int> cards = deck;
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      std::mt19937_64 gen(splitmix64(seed ^ splitmix64(b)));
      const std::uint64_t first = b * kTrialsPerBlock;
      const std::uint64_t n = std::min(kTrialsPerBlock, trials - first);
      std::uint64_t won = 0;
      for (std::uint64_t t = 0; t < n; ++t) {
        // A block's outcome must not depend on which blocks ran before it.
        if (t == 0) cards = deck;
        Counts left(counts.begin(), counts.end());
        won += play_once(cards, left, m, strategy, gen) ? 1 : 0;
      }
      wins += won;
    }
  };
  unsigned n_workers = workers ? workers : std::thread::hardware_concurrency();
  n_workers = static_cast<unsigned>(std::clamp<std::uint64_t>(n_workers, 1, blocks));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }

  SimReport r;
  r.trials = trials;
  r.wins = wins.load();
  r.estimate = static_cast<double>(r.wins) / static_cast<double>(trials);
  r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(trials));
  r.seed = seed;
  r.prng = "mt19937_64/splitmix64-blocks/rejection-fisher-yates";
  r.strategy = strategy.to_string();
  return r;
}

std::optional<ExactProb> exact_reference(std::span<const int> counts, int m,
                                         const StrategySpec& strategy, GreedyEngine& greedy,
                                         AdvanceEngine& advance) {
  strategy.validate(counts, m);
  switch (strategy.kind) {
    case StrategySpec::Kind::greedy:
      return greedy.win_prob(canonicalize(counts), m);
    case StrategySpec::Kind::anti_greedy:
      return min_adaptive_prob(canonicalize(counts), m);
    case StrategySpec::Kind::advance:
    case StrategySpec::Kind::sequence: {
      // Order is immaterial for advance play; only per-value counts matter.
      BidVector b(counts.size(), 0);
      for (int v : strategy.named) ++b[static_cast<std::size_t>(v)];
      return advance.win_prob(b, counts);
    }
  }
  return std::nullopt;
}

}  // namespace dundee
