#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dundee/deck.hpp"
#include "dundee/exact_math.hpp"

namespace dundee {

/// Brute-force ground truth, independent of the memoized engines.
namespace oracle {

/// Size guards: factorial and exponential routines fail fast past these.
struct Limits {
  int adaptive_max_cards = 12;
  int enumeration_max_cards = 10;
  int ryser_max_dim = 16;
};

enum class Objective { max, min };

struct AdaptiveOptimum {
  ExactProb value;
  /// Indices (caller order) of every first bid attaining `value`.
  std::vector<std::size_t> best_first_bids;
};

/// Full game-tree value over ALL adaptive strategies: at every node each
/// value (including ones with no cards left) is tried as the bid.
AdaptiveOptimum optimal_adaptive_value(std::span<const int> counts, int m, Objective objective,
                                       const Limits& limits = {});

/// Enumerates every distinct ordering of the deck and counts those with no
/// coincidence against the bids named in value order (b_1 ones, then b_2
/// twos, ...).
ExactProb brute_force_advance(std::span<const int> bids, std::span<const int> counts,
                              const Limits& limits = {});

/// Same, against an explicit sequence of named values (0-based indices).
ExactProb brute_force_advance_sequence(std::span<const int> named, std::span<const int> counts,
                                       const Limits& limits = {});

/// Square 0/1 matrix pairing bid slots (rows) with individual cards
/// (columns). Rows past the real bids are padding bids that match nothing.
class BidMatrix {
 public:
  BidMatrix(int dim, std::vector<std::uint8_t> cells);

  int dim() const { return dim_; }
  bool at(int row, int col) const { return cells_[static_cast<std::size_t>(row * dim_ + col)] != 0; }
  int row_sum(int row) const;

 private:
  int dim_;
  std::vector<std::uint8_t> cells_;
};

BidMatrix build_bid_matrix(std::span<const int> bids, std::span<const int> counts);

/// Ryser's inclusion-exclusion formula, Gray-code ordered.
BigInt permanent_ryser(const BidMatrix& mat, const Limits& limits = {});

}  // namespace oracle
}  // namespace dundee
