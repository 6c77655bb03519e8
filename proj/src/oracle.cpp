#include "dundee/oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "dundee/errors.hpp"

namespace dundee::oracle {

namespace {

class GameTree {
 public:
  explicit GameTree(Objective objective) : objective_(objective) {}

  // Value of bidding `j` first, then playing optimally.
  ExactProb bid_value(const Counts& deck, int m, std::size_t j) {
    const int cards = sum_of(deck);
    ExactProb v = 0;
    for (std::size_t h = 0; h < deck.size(); ++h) {
      if (h == j || deck[h] == 0) continue;
      Counts rest = deck;
      --rest[h];
      v += deck[h] * value(rest, m - 1);
    }
    return v / cards;
  }

  ExactProb value(Counts deck, int m) {
    if (m == 0) return 1;
    std::sort(deck.begin(), deck.end());
    auto key = std::make_pair(deck, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ExactProb best = bid_value(deck, m, 0);
    for (std::size_t j = 1; j < deck.size(); ++j) {
      ExactProb v = bid_value(deck, m, j);
      if (objective_ == Objective::max ? v > best : v < best) best = v;
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

 private:
  Objective objective_;
  std::map<std::pair<Counts, int>, ExactProb> memo_;
};

}  // namespace

AdaptiveOptimum optimal_adaptive_value(std::span<const int> counts, int m, Objective objective,
                                       const Limits& limits) {
  if (counts.empty()) throw DomainError("deck must have at least one value");
  for (int x : counts) {
    if (x < 0) throw DomainError("deck counts must be non-negative");
  }
  const int cards = sum_of(counts);
  if (m < 0 || m > cards) throw DomainError("rounds must lie between 0 and the number of cards");
  if (cards > limits.adaptive_max_cards) {
    throw SizeGuardError("adaptive oracle refuses decks above " +
                         std::to_string(limits.adaptive_max_cards) + " cards");
  }

  const Counts deck(counts.begin(), counts.end());
  AdaptiveOptimum out;
  if (m == 0) {
    out.value = 1;
    for (std::size_t j = 0; j < deck.size(); ++j) out.best_first_bids.push_back(j);
    return out;
  }
  GameTree tree(objective);
  std::vector<ExactProb> values;
  for (std::size_t j = 0; j < deck.size(); ++j) values.push_back(tree.bid_value(deck, m, j));
  out.value = objective == Objective::max ? *std::max_element(values.begin(), values.end())
                                          : *std::min_element(values.begin(), values.end());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] == out.value) out.best_first_bids.push_back(j);
  }
  return out;
}

ExactProb brute_force_advance(std::span<const int> bids, std::span<const int> counts,
                              const Limits& limits) {
  if (bids.size() != counts.size()) throw DomainError("bid vector and deck length differ");
  std::vector<int> named;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i] < 0) throw DomainError("bids must be non-negative");
    named.insert(named.end(), static_cast<std::size_t>(bids[i]), static_cast<int>(i));
  }
  return brute_force_advance_sequence(named, counts, limits);
}

ExactProb brute_force_advance_sequence(std::span<const int> named, std::span<const int> counts,
                                       const Limits& limits) {
  const int cards = sum_of(counts);
  if (cards > limits.enumeration_max_cards) {
    throw SizeGuardError("advance enumeration refuses decks above " +
                         std::to_string(limits.enumeration_max_cards) + " cards");
  }
  if (static_cast<int>(named.size()) > cards) throw DomainError("more bids than cards");
  for (int x : named) {
    if (x < 0 || static_cast<std::size_t>(x) >= counts.size()) {
      throw DomainError("named value out of range");
    }
  }

  std::vector<int> order;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw DomainError("deck counts must be non-negative");
    order.insert(order.end(), static_cast<std::size_t>(counts[i]), static_cast<int>(i));
  }
  // `order` starts sorted, so next_permutation visits each distinct
  // sequence exactly once.
  BigInt wins = 0, total = 0;
  do {
    ++total;
    bool survived = true;
    for (std::size_t t = 0; t < named.size() && survived; ++t) survived = order[t] != named[t];
    if (survived) ++wins;
  } while (std::next_permutation(order.begin(), order.end()));
  return make_rational(wins, total);
}

BidMatrix::BidMatrix(int dim, std::vector<std::uint8_t> cells)
    : dim_(dim), cells_(std::move(cells)) {
  if (dim < 0 || cells_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw DomainError("bid matrix must be square");
  }
}

int BidMatrix::row_sum(int row) const {
  int s = 0;
  for (int c = 0; c < dim_; ++c) s += at(row, c);
  return s;
}

BidMatrix build_bid_matrix(std::span<const int> bids, std::span<const int> counts) {
  if (bids.size() != counts.size()) throw DomainError("bid vector and deck length differ");
  const int cards = sum_of(counts);
  if (sum_of(bids) > cards) throw DomainError("more bids than cards");

  std::vector<int> row_value, col_value;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    row_value.insert(row_value.end(), static_cast<std::size_t>(bids[i]), static_cast<int>(i));
    col_value.insert(col_value.end(), static_cast<std::size_t>(counts[i]), static_cast<int>(i));
  }
  row_value.resize(static_cast<std::size_t>(cards), -1);  // padding bids

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(cards) * static_cast<std::size_t>(cards));
  for (int r : row_value) {
    for (int c : col_value) cells.push_back(r != c ? 1 : 0);
  }
  return BidMatrix(cards, std::move(cells));
}

BigInt permanent_ryser(const BidMatrix& mat, const Limits& limits) {
  const int n = mat.dim();
  if (n > limits.ryser_max_dim) {
    throw SizeGuardError("Ryser permanent refuses dimension above " +
                         std::to_string(limits.ryser_max_dim));
  }
  if (n == 0) return 1;
  if (n > 20) throw SizeGuardError("Ryser permanent limited to 20 columns");

  // |row sum| <= n, so every partial result is below 2^n n^n, which fits
  // __int128 for n <= 20.
  using Wide = __int128;
  std::vector<long> row_sums(static_cast<std::size_t>(n), 0);
  Wide total = 0;
  unsigned long gray = 0;
  for (unsigned long k = 1; k < (1UL << n); ++k) {
    const unsigned long next = k ^ (k >> 1);
    const unsigned long flipped = next ^ gray;
    const int col = __builtin_ctzl(flipped);
    const long sign = (next & flipped) ? 1 : -1;
    for (int r = 0; r < n; ++r) {
      if (mat.at(r, col)) row_sums[static_cast<std::size_t>(r)] += sign;
    }
    gray = next;
    Wide prod = 1;
    for (long s : row_sums) {
      prod *= s;
      if (prod == 0) break;
    }
    const bool odd = (__builtin_popcountl(gray) & 1) != 0;
    total += (odd == (n % 2 == 1)) ? prod : -prod;
  }

  const bool negative = total < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-total)
                                   : static_cast<unsigned __int128>(total);
  BigInt hi = static_cast<unsigned long>(mag >> 64);
  BigInt lo = static_cast<unsigned long>(mag & ~0UL);
  BigInt out = (hi << 64) + lo;
  return negative ? BigInt(-out) : out;
}

}  // namespace dundee::oracle
