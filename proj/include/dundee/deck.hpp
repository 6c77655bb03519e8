#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dundee/exact_math.hpp"

namespace dundee {

/// Raw per-value counts in caller order (labels still meaningful).
using Counts = std::vector<int>;

/// Per-value card counts sorted non-increasingly. Value labels are dropped:
/// every engine is symmetric under relabeling. Trailing zeros are kept, since
/// a value with no cards left is a bid that can never coincide.
class DeckComposition {
 public:
  DeckComposition() = default;

  /// Sorts `raw`; rejects an empty sequence or a negative entry.
  static DeckComposition canonical(std::span<const int> raw);

  const Counts& counts() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }
  int total() const { return total_; }
  int max() const { return counts_.front(); }
  int min() const { return counts_.back(); }
  bool is_regular() const { return counts_.front() == counts_.back(); }

  std::string to_string() const;

  friend bool operator==(const DeckComposition&, const DeckComposition&) = default;
  friend auto operator<=>(const DeckComposition& a, const DeckComposition& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  Counts counts_;
  int total_ = 0;
};

DeckComposition canonicalize(std::span<const int> raw);

/// The deck s^i: entry `i` (0-based) decremented, then re-sorted.
DeckComposition remove_one(const DeckComposition& deck, std::size_t i);

/// True iff every partial sum of `s` dominates that of `q`.
/// Both decks must share length and total.
bool majorizes(const DeckComposition& s, const DeckComposition& q);

/// Product over {i : s_i > q_i} of s_i (s_i - 1) ... (q_i + 1); 1 when no
/// index qualifies. Accepts non-canonical, index-aligned sequences.
BigInt p_product(std::span<const int> s, std::span<const int> q);

/// A deck together with the number of rounds still to be played.
struct GameState {
  DeckComposition deck;
  int rounds_left = 0;

  GameState(DeckComposition d, int m);
};

/// rounds_left > total - max(counts): anti-greedy play cannot be survived.
bool is_decided(const GameState& state);

/// Every non-increasing length-`v` sequence of non-negative integers with
/// sum `c` (the class V_{v,c}), in lexicographically decreasing order.
std::vector<DeckComposition> compositions_of(int v, int c);

/// Integer partitions of every total in [1, max_total], as canonical decks
/// (positive entries only). Ordered by total, then lexicographically.
std::vector<DeckComposition> partitions_up_to(int max_total);

/// Deck/bid notation: comma separated terms, each either "n" or "nxk"
/// (k values of n cards each). "4x12,3" is twelve fours and one three.
/// Caller order is preserved.
Counts parse_counts(std::string_view text);

/// Compact notation: runs of equal entries collapse to "nxk".
std::string format_counts(std::span<const int> counts);

/// "{a,b,c}" as used in printed tables.
std::string braced(std::span<const int> counts);

int sum_of(std::span<const int> counts);

}  // namespace dundee
