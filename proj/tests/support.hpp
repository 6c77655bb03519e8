#pragma once

// Small enumerators used as ground truth in tests. They share no code with
// the engines or the oracle module.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dundee/exact_math.hpp"

namespace testing_support {

inline std::vector<int> cards_of(const std::vector<int>& counts) {
  std::vector<int> cards;
  for (std::size_t i = 0; i < counts.size(); ++i) cards.insert(cards.end(), counts[i], static_cast<int>(i));
  return cards;
}

// Fraction of all orderings of the deck that greedy play survives for m
// rounds. Greedy names the lowest-index value with the fewest remaining
// cards.
inline dundee::Rational greedy_by_orderings(std::vector<int> counts, int m) {
  std::vector<int> cards = cards_of(counts);
  std::sort(cards.begin(), cards.end());
  long wins = 0, total = 0;
  do {
    std::vector<int> left = counts;
    bool alive = true;
    for (int r = 0; r < m && alive; ++r) {
      const auto named = static_cast<std::size_t>(std::min_element(left.begin(), left.end()) - left.begin());
      const int drawn = cards[static_cast<std::size_t>(r)];
      if (static_cast<std::size_t>(drawn) == named) alive = false;
      --left[static_cast<std::size_t>(drawn)];
    }
    wins += alive;
    ++total;
  } while (std::next_permutation(cards.begin(), cards.end()));
  return dundee::make_rational(wins, total);
}

// Fraction of orderings surviving a fixed naming sequence (value indices).
inline dundee::Rational sequence_by_orderings(const std::vector<int>& counts, const std::vector<int>& named) {
  std::vector<int> cards = cards_of(counts);
  std::sort(cards.begin(), cards.end());
  long wins = 0, total = 0;
  do {
    bool alive = true;
    for (std::size_t r = 0; r < named.size() && alive; ++r) alive = cards[r] != named[r];
    wins += alive;
    ++total;
  } while (std::next_permutation(cards.begin(), cards.end()));
  return dundee::make_rational(wins, total);
}

// Bids named in value order: b_0 copies of 0, then b_1 copies of 1, ...
inline std::vector<int> value_order(const std::vector<int>& bids) {
  std::vector<int> named;
  for (std::size_t i = 0; i < bids.size(); ++i) named.insert(named.end(), bids[i], static_cast<int>(i));
  return named;
}

}  // namespace testing_support
