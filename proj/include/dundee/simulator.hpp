#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dundee/advance.hpp"
#include "dundee/deck.hpp"
#include "dundee/exact_math.hpp"

namespace dundee {

class GreedyEngine;
class AdvanceEngine;

/// How a simulated player picks bids.
///
/// Text form: "greedy", "anti-greedy", "advance:<bids>" (bid vector in deck
/// notation, named in value order), "sequence:<v1,v2,...>" (1-based values,
/// named in the given order). An advance bid or sequence shorter than the
/// game leaves the remaining rounds unnamed, as if padded with a value that
/// is not in the deck.
struct StrategySpec {
  enum class Kind { greedy, anti_greedy, advance, sequence };

  Kind kind = Kind::greedy;
  std::vector<int> named;  // advance/sequence: 0-based values in naming order
  BidVector bids;          // advance: the bid vector itself

  static StrategySpec parse(std::string_view text);
  std::string to_string() const;
  /// Rejects bids/sequences that do not fit the deck or the round count.
  void validate(std::span<const int> counts, int m) const;
};

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  double estimate = 0;
  double std_error = 0;
  std::uint64_t seed = 0;
  std::string prng;
  std::string strategy;
  std::optional<ExactProb> exact_reference;

  nlohmann::json to_json() const;
};

/// Trials per seed block. Block k draws from mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(k)), so the aggregate is independent of
/// how many workers share the blocks.
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

/// Plays `trials` independent games against uniformly shuffled decks.
/// `counts` keeps caller order; greedy ties go to the lowest index.
SimReport simulate(std::span<const int> counts, int m, const StrategySpec& strategy,
                   std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// The exact win probability of a strategy, when an engine provides one.
std::optional<ExactProb> exact_reference(std::span<const int> counts, int m,
                                         const StrategySpec& strategy, GreedyEngine& greedy,
                                         AdvanceEngine& advance);

}  // namespace dundee
