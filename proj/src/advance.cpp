#include "dundee/advance.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "dundee/errors.hpp"

namespace dundee {

AdvanceState AdvanceState::from(std::span<const int> bids, std::span<const int> counts) {
  AdvanceState st;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i] == 0) {
      st.safe += counts[i];
    } else {
      st.pairs.emplace_back(bids[i], counts[i]);
    }
  }
  st.normalize();
  return st;
}

int AdvanceState::cards() const {
  int n = safe;
  for (const auto& p : pairs) n += p.second;
  return n;
}

void AdvanceState::normalize() { std::sort(pairs.begin(), pairs.end()); }

std::string AdvanceState::key() const {
  std::string k;
  k.reserve(sizeof(int) * (2 * pairs.size() + 1));
  auto put = [&k](int x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
  put(safe);
  for (const auto& [b, s] : pairs) {
    put(b);
    put(s);
  }
  return k;
}

std::pair<BidVector, Counts> pad_bid(std::span<const int> bids, std::span<const int> counts) {
  if (bids.size() != counts.size()) throw DomainError("pad_bid: length mismatch");
  const int m = sum_of(bids);
  const int c = sum_of(counts);
  if (m >= c) throw DomainError("pad_bid: bids already cover every card");
  BidVector b(bids.begin(), bids.end());
  Counts s(counts.begin(), counts.end());
  b.push_back(c - m);
  s.push_back(0);
  return {std::move(b), std::move(s)};
}

BidVector almost_regular_bid(int v, int m) {
  if (v < 1 || m < 0) throw DomainError("almost_regular_bid: need v >= 1, m >= 0");
  BidVector b(static_cast<std::size_t>(v), m / v);
  for (int i = v - m % v; i < v; ++i) ++b[static_cast<std::size_t>(i)];
  return b;
}

namespace {

void check_pair(std::span<const int> bids, std::span<const int> counts) {
  if (bids.size() != counts.size()) {
    throw DomainError("bid vector and deck must have the same number of values");
  }
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i] < 0 || counts[i] < 0) throw DomainError("bids and counts must be non-negative");
  }
  if (sum_of(bids) > sum_of(counts)) throw DomainError("more bids than cards");
}

const ExactProb& one() {
  static const ExactProb value = 1;
  return value;
}

}  // namespace

ExactProb AdvanceEngine::win_prob(std::span<const int> bids, std::span<const int> counts) {
  check_pair(bids, counts);
  if (sum_of(bids) < sum_of(counts)) {
    auto [b, s] = pad_bid(bids, counts);
    return solve(AdvanceState::from(b, s));
  }
  return solve(AdvanceState::from(bids, counts));
}

const ExactProb& AdvanceEngine::solve(const AdvanceState& state) {
  if (state.pairs.empty()) return one();
  std::string key = state.key();
  if (const ExactProb* hit = memo_.find(key)) return *hit;

  const int total = state.cards();
  auto child_after = [&state](std::size_t drawn) {
    AdvanceState next = state;
    auto& named = next.pairs.front();
    --named.first;
    if (drawn == 0) {
      --next.safe;
    } else {
      --next.pairs[drawn].second;
    }
    if (named.first == 0) {
      next.safe += named.second;
      next.pairs.erase(next.pairs.begin());
    }
    next.normalize();
    return next;
  };

  ExactProb sum = 0;
  // Index 0 of `pairs` is the named value; equal pairs give equal children.
  for (std::size_t i = 1; i < state.pairs.size();) {
    std::size_t j = i;
    while (j < state.pairs.size() && state.pairs[j] == state.pairs[i]) ++j;
    const int cards = state.pairs[i].second;
    if (cards > 0) {
      sum += ExactProb(static_cast<long>(j - i) * cards) * solve(child_after(i));
    }
    i = j;
  }
  if (state.safe > 0) sum += ExactProb(state.safe) * solve(child_after(0));
  sum /= total;
  return memo_.insert(std::move(key), std::move(sum));
}

namespace {

void block_bids(const DeckComposition& deck, std::size_t pos, int remaining,
                BidVector& prefix, std::vector<BidVector>& out, std::size_t limit) {
  if (pos == deck.size()) {
    if (remaining == 0) {
      if (out.size() >= limit) {
        throw SizeGuardError("bid enumeration exceeds " + std::to_string(limit) +
                             " candidates; refusing");
      }
      out.push_back(prefix);
    }
    return;
  }
  int lo = 0;
  if (pos > 0 && deck[pos] == deck[pos - 1]) lo = prefix[pos - 1];
  const int slots_after = static_cast<int>(deck.size() - pos - 1);
  for (int b = lo; b <= remaining; ++b) {
    // The rest of a non-decreasing block must be at least b each.
    std::size_t k = pos + 1;
    int forced = 0;
    while (k < deck.size() && deck[k] == deck[pos]) {
      forced += b;
      ++k;
    }
    if (forced > remaining - b) break;
    if (slots_after == 0 && b != remaining) continue;
    prefix[pos] = b;
    block_bids(deck, pos + 1, remaining - b, prefix, out, limit);
  }
}

void every_bid(int v, std::size_t pos, int remaining, BidVector& prefix,
               std::vector<BidVector>& out, std::size_t limit) {
  if (pos + 1 == static_cast<std::size_t>(v)) {
    if (out.size() >= limit) {
      throw SizeGuardError("bid enumeration exceeds " + std::to_string(limit) +
                           " candidates; refusing");
    }
    prefix[pos] = remaining;
    out.push_back(prefix);
    return;
  }
  for (int b = 0; b <= remaining; ++b) {
    prefix[pos] = b;
    every_bid(v, pos + 1, remaining - b, prefix, out, limit);
  }
}

}  // namespace

std::vector<BidVector> block_canonical_bids(const DeckComposition& deck, int m,
                                            std::size_t limit) {
  if (m < 0) throw DomainError("rounds must be non-negative");
  std::vector<BidVector> out;
  BidVector prefix(deck.size(), 0);
  block_bids(deck, 0, m, prefix, out, limit);
  return out;
}

std::vector<BidVector> all_bids(int v, int m, std::size_t limit) {
  if (v < 1 || m < 0) throw DomainError("all_bids: need v >= 1, m >= 0");
  std::vector<BidVector> out;
  BidVector prefix(static_cast<std::size_t>(v), 0);
  every_bid(v, 0, m, prefix, out, limit);
  return out;
}

std::vector<BidVector> expand_orbit(const DeckComposition& deck, const BidVector& bids) {
  std::vector<BidVector> out{bids};
  for (std::size_t lo = 0; lo < deck.size();) {
    std::size_t hi = lo;
    while (hi < deck.size() && deck[hi] == deck[lo]) ++hi;
    std::vector<BidVector> next;
    for (const BidVector& b : out) {
      BidVector cur = b;
      std::sort(cur.begin() + static_cast<std::ptrdiff_t>(lo),
                cur.begin() + static_cast<std::ptrdiff_t>(hi));
      do {
        next.push_back(cur);
      } while (std::next_permutation(cur.begin() + static_cast<std::ptrdiff_t>(lo),
                                     cur.begin() + static_cast<std::ptrdiff_t>(hi)));
    }
    out = std::move(next);
    lo = hi;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ExactProb> AdvanceEngine::evaluate_all(const std::vector<BidVector>& bids,
                                                   std::span<const int> counts) {
  std::vector<ExactProb> values(bids.size());
  unsigned workers = options_.workers ? options_.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(bids.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < bids.size(); i = next++) {
        values[i] = win_prob(bids[i], counts);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

BidSet AdvanceEngine::optimal_bids(const DeckComposition& deck, int m, bool expand_orbits) {
  if (m < 1 || m > deck.total()) {
    throw DomainError("rounds must lie between 1 and the number of cards (" +
                      std::to_string(deck.total()) + ")");
  }
  const auto candidates = block_canonical_bids(deck, m, options_.max_candidates);
  const auto values = evaluate_all(candidates, deck.counts());

  BidSet result;
  result.candidates = candidates.size();
  result.value = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (values[i] != result.value) continue;
    if (expand_orbits) {
      for (auto& b : expand_orbit(deck, candidates[i])) result.bids.push_back(std::move(b));
    } else {
      result.bids.push_back(candidates[i]);
    }
  }
  std::sort(result.bids.begin(), result.bids.end());
  return result;
}

BidSet AdvanceEngine::minimizing_bids(const DeckComposition& deck, int m) {
  const int c = deck.total();
  if (m < 0 || m > c) {
    throw DomainError("rounds must lie between 0 and the number of cards (" +
                      std::to_string(c) + ")");
  }
  BidSet result;
  if (m == 0) {
    result.value = 1;
    result.bids.push_back(BidVector(deck.size(), 0));
    result.candidates = 1;
    return result;
  }
  const int v = static_cast<int>(deck.size());
  if (is_decided(GameState(deck, m))) {
    // Pr(b, s) = 0 exactly when some value is named more often than there
    // are cards of other values (Hall's condition fails).
    result.value = 0;
    for (auto& b : all_bids(v, m, options_.max_candidates)) {
      bool doomed = false;
      for (std::size_t i = 0; i < deck.size(); ++i) doomed |= b[i] > c - deck[i];
      if (doomed) result.bids.push_back(std::move(b));
    }
    result.candidates = result.bids.size();
    return result;
  }
  result.value = 1;
  for (int i = 0; i < m; ++i) result.value *= make_rational(c - deck.max() - i, c - i);
  for (std::size_t j = 0; j < deck.size() && deck[j] == deck.max(); ++j) {
    BidVector b(deck.size(), 0);
    b[j] = m;
    result.bids.push_back(std::move(b));
  }
  std::sort(result.bids.begin(), result.bids.end());
  result.candidates = result.bids.size();
  return result;
}

}  // namespace dundee
