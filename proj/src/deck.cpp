#include "dundee/deck.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

#include "dundee/errors.hpp"

namespace dundee {

DeckComposition DeckComposition::canonical(std::span<const int> raw) {
  if (raw.empty()) throw DomainError("deck must have at least one value");
  DeckComposition d;
  d.counts_.assign(raw.begin(), raw.end());
  for (int x : d.counts_) {
    if (x < 0) throw DomainError("deck counts must be non-negative");
  }
  std::sort(d.counts_.begin(), d.counts_.end(), std::greater<>());
  d.total_ = sum_of(d.counts_);
  return d;
}

std::string DeckComposition::to_string() const { return format_counts(counts_); }

DeckComposition canonicalize(std::span<const int> raw) {
  return DeckComposition::canonical(raw);
}

DeckComposition remove_one(const DeckComposition& deck, std::size_t i) {
  if (i >= deck.size()) throw DomainError("remove_one: value index out of range");
  if (deck[i] == 0) throw DomainError("remove_one: no card of that value left");
  // Decrementing the last entry of the equal block keeps the order intact.
  std::size_t j = i;
  while (j + 1 < deck.size() && deck[j + 1] == deck[i]) ++j;
  Counts next = deck.counts();
  --next[j];
  return DeckComposition::canonical(next);
}

bool majorizes(const DeckComposition& s, const DeckComposition& q) {
  if (s.size() != q.size()) throw DomainError("majorizes: length mismatch");
  if (s.total() != q.total()) throw DomainError("majorizes: total mismatch");
  long ps = 0, pq = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    ps += s[i];
    pq += q[i];
    if (ps < pq) return false;
  }
  return true;
}

BigInt p_product(std::span<const int> s, std::span<const int> q) {
  if (s.size() != q.size()) throw DomainError("p_product: length mismatch");
  BigInt r = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > q[i]) r *= falling_factorial(s[i], q[i]);
  }
  return r;
}

GameState::GameState(DeckComposition d, int m) : deck(std::move(d)), rounds_left(m) {
  if (m < 0 || m > deck.total()) {
    throw DomainError("rounds must lie between 0 and the number of cards");
  }
}

bool is_decided(const GameState& state) {
  return state.rounds_left > state.deck.total() - state.deck.max();
}

namespace {

void compose(int v, int remaining, int cap, Counts& prefix,
             std::vector<DeckComposition>& out) {
  if (static_cast<int>(prefix.size()) == v) {
    if (remaining == 0) out.push_back(DeckComposition::canonical(prefix));
    return;
  }
  const int slots = v - static_cast<int>(prefix.size());
  // Smallest feasible head: the rest can hold at most head each.
  const int lo = (remaining + slots - 1) / slots;
  for (int head = lo; head <= std::min(cap, remaining); ++head) {
    prefix.push_back(head);
    compose(v, remaining - head, head, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<DeckComposition> compositions_of(int v, int c) {
  if (v < 1 || c < 0) throw DomainError("compositions_of: need v >= 1, c >= 0");
  std::vector<DeckComposition> out;
  Counts prefix;
  compose(v, c, c, prefix, out);
  return out;
}

std::vector<DeckComposition> partitions_up_to(int max_total) {
  std::vector<DeckComposition> out;
  for (int c = 1; c <= max_total; ++c) {
    for (int v = 1; v <= c; ++v) {
      for (auto& d : compositions_of(v, c)) {
        if (d.min() > 0) out.push_back(std::move(d));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.total() != b.total() ? a.total() < b.total() : a < b;
  });
  return out;
}

namespace {

int parse_int(std::string_view tok, std::string_view whole) {
  int value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (tok.empty() || ec != std::errc() || ptr != last || value < 0) {
    throw NotationError("malformed count list '" + std::string(whole) +
                        "': expected non-negative integers like 4,3,2 or 4x13");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Counts parse_counts(std::string_view text) {
  Counts out;
  std::string_view rest = trim(text);
  if (!rest.empty() && rest.front() == '{' && rest.back() == '}') {
    rest = trim(rest.substr(1, rest.size() - 2));
  }
  if (rest.empty()) throw NotationError("empty count list");
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view term = trim(rest.substr(0, comma));
    const auto x = term.find_first_of("xX*");
    if (x == std::string_view::npos) {
      out.push_back(parse_int(term, text));
    } else {
      const int n = parse_int(trim(term.substr(0, x)), text);
      const int k = parse_int(trim(term.substr(x + 1)), text);
      if (k == 0) throw NotationError("replication count must be positive in '" +
                                      std::string(text) + "'");
      out.insert(out.end(), static_cast<std::size_t>(k), n);
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (out.size() > 4096) throw NotationError("too many values in count list");
  return out;
}

std::string format_counts(std::span<const int> counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size();) {
    std::size_t j = i;
    while (j < counts.size() && counts[j] == counts[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(counts[i]);
    if (j - i > 1) out += "x" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string braced(std::span<const int> counts) {
  std::string out = "{";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  return out + "}";
}

int sum_of(std::span<const int> counts) {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

}  // namespace dundee
