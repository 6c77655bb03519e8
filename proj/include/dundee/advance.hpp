#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dundee/deck.hpp"
#include "dundee/exact_math.hpp"
#include "dundee/memo_table.hpp"

namespace dundee {

/// Per-value bid counts, index-aligned with a deck.
using BidVector = Counts;

/// Memoization key for advance analysis: the multiset of (bids left,
/// cards left) over values that still have bids, plus the number of safe
/// cards (cards whose value will never be named again).
///
/// Pairs are kept sorted, which identifies every relabeling of the same
/// situation. Invariant: safe + sum of card counts == sum of bid counts.
struct AdvanceState {
  std::vector<std::pair<int, int>> pairs;  // (bids >= 1, cards >= 0)
  int safe = 0;

  /// Builds the state for a bid vector with sum(bids) == sum(counts).
  static AdvanceState from(std::span<const int> bids, std::span<const int> counts);

  int cards() const;
  void normalize();
  std::string key() const;
};

/// Appends a value with no cards that absorbs the sum(counts) - sum(bids)
/// unused rounds, turning an m-round game into a full-deck one.
/// Requires sum(bids) < sum(counts).
std::pair<BidVector, Counts> pad_bid(std::span<const int> bids, std::span<const int> counts);

/// The non-decreasing length-v vector naming each value floor(m/v) or
/// ceil(m/v) times.
BidVector almost_regular_bid(int v, int m);

struct BidSet {
  std::vector<BidVector> bids;  // sorted lexicographically
  ExactProb value;
  std::size_t candidates = 0;  // bid vectors evaluated
};

/// Exact win probabilities of advance (pre-committed) bids.
///
/// Pr(b, s) is computed by consuming the bids of one value at a time (the
/// first pair in canonical order). A drawn card of another bid value moves
/// that value's count down; a drawn safe card shrinks the safe pool; a card
/// of the named value is a coincidence and contributes nothing. When a
/// value's bids run out its remaining cards join the safe pool.
///
/// Thread-safe; the memo table is shared by concurrent callers.
class AdvanceEngine {
 public:
  struct Options {
    /// Upper bound on the number of candidate bid vectors an enumeration
    /// may evaluate before refusing with SizeGuardError.
    std::size_t max_candidates = 500000;
    /// Worker threads for enumeration; 0 picks the hardware concurrency.
    unsigned workers = 0;
  };

  AdvanceEngine() = default;
  explicit AdvanceEngine(Options options) : options_(options) {}

  /// Pr(bids, counts). Requires equal lengths and sum(bids) <= sum(counts).
  ExactProb win_prob(std::span<const int> bids, std::span<const int> counts);

  /// All bid vectors with sum m maximizing Pr(b, deck). Within each block of
  /// equal deck counts only non-decreasing bids are reported unless
  /// `expand_orbits` is set. Exponential in the number of values.
  BidSet optimal_bids(const DeckComposition& deck, int m, bool expand_orbits = false);

  /// All bid vectors with sum m minimizing Pr(b, deck), with the minimum.
  BidSet minimizing_bids(const DeckComposition& deck, int m);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  const ExactProb& solve(const AdvanceState& state);
  std::vector<ExactProb> evaluate_all(const std::vector<BidVector>& bids,
                                      std::span<const int> counts);

  Options options_;
  MemoTable<std::string, ExactProb> memo_;
};

/// Compositions of m into deck.size() parts, non-decreasing inside every
/// block of equal deck counts. Throws SizeGuardError past `limit` results.
std::vector<BidVector> block_canonical_bids(const DeckComposition& deck, int m,
                                            std::size_t limit);

/// Every composition of m into v parts. Throws SizeGuardError past `limit`.
std::vector<BidVector> all_bids(int v, int m, std::size_t limit);

/// All distinct rearrangements of `bids` within blocks of equal deck counts.
std::vector<BidVector> expand_orbit(const DeckComposition& deck, const BidVector& bids);

}  // namespace dundee
