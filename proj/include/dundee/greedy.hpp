#pragma once

#include <span>
#include <string>
#include <vector>

#include "dundee/deck.hpp"
#include "dundee/exact_math.hpp"
#include "dundee/memo_table.hpp"

namespace dundee {

/// Exact analysis of the greedy adaptive strategy (always name a value with
/// the fewest remaining cards).
///
/// g_m(s) = 1 when m = 0 or some count is 0; otherwise
/// g_m(s) = (1/c) * sum over i != named of s_i * g_{m-1}(s^i),
/// where the named value is the last entry of the minimum-count block.
/// Values with equal counts are handled as one block so each distinct s^i is
/// evaluated once. Results are memoized per (canonical deck, m).
///
/// Thread-safe: concurrent callers share the memo table.
class GreedyEngine {
 public:
  /// g_m(deck). Throws DomainError unless 0 <= m <= deck.total().
  ExactProb win_prob(const DeckComposition& deck, int m);

  /// g(deck) = g_c(deck) with c the number of cards.
  ExactProb full(const DeckComposition& deck) { return win_prob(deck, deck.total()); }

  /// Win probability of bidding value j now and playing greedily afterwards,
  /// for every index j of `counts` (caller order, labels preserved).
  /// Requires m >= 1 and at least one card.
  std::vector<ExactProb> bid_values(std::span<const int> counts, int m);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Block {
    int count;
    int multiplicity;
  };

  const ExactProb& solve(std::vector<Block>& blocks, int cards, int m);

  MemoTable<std::string, ExactProb> memo_;
};

/// Two-value closed form: C(s1+s2-b1-b2, s1-b2) / C(s1+s2, s1).
/// Requires s1 >= s2 >= 0, b1, b2 >= 0 and b1 + b2 <= s1 + s2.
ExactProb two_value_prob(int s1, int s2, int b1, int b2);

/// The bid split (b1, b2) that greedy play realizes on a two-value deck:
/// all on the scarcer value while m <= s1 - s2, otherwise balanced so that
/// s1 - b2 and s2 - b1 differ by at most one.
std::pair<int, int> greedy_two_value_split(int s1, int s2, int m);

/// Smallest win probability over all adaptive strategies (attained by
/// anti-greedy play): 0 when m > c - s_1, otherwise
/// prod_{i<m} (c - s_1 - i) / (c - i).
ExactProb min_adaptive_prob(const DeckComposition& deck, int m);

/// g(q, k, 1) = 1/(q+1) + 1/(k+1) - 1/(q+k+1), for q, k >= 1.
ExactProb closed_form_qk1(int q, int k);

enum class Family { i22, i32, i42, i33 };

/// Hard-coded partial-fraction expressions for g(i,2,2), g(i,3,2),
/// g(i,4,2) and g(i,3,3). They exist to cross-check the recurrence.
ExactProb closed_form_family(Family family, int i);

/// Smallest i for which the family's identity is asserted.
int family_min_index(Family family);

/// Constant term of the family's expression (its limit as i grows).
ExactProb family_constant_term(Family family);

/// The deck (i, a, b) a family describes.
DeckComposition family_deck(Family family, int i);

/// The deck with the first entry removed, whose g the constant term equals.
DeckComposition family_tail(Family family);

std::string family_name(Family family);
Family parse_family(std::string_view name);

}  // namespace dundee
