#include "dundee/greedy.hpp"

#include <array>

#include "dundee/errors.hpp"

namespace dundee {

namespace {

const ExactProb& one() {
  static const ExactProb value = 1;
  return value;
}

}  // namespace

ExactProb GreedyEngine::win_prob(const DeckComposition& deck, int m) {
  if (m < 0 || m > deck.total()) {
    throw DomainError("greedy: rounds must lie between 0 and the number of cards (" +
                      std::to_string(deck.total()) + ")");
  }
  std::vector<Block> blocks;
  for (int x : deck.counts()) {
    if (!blocks.empty() && blocks.back().count == x) {
      ++blocks.back().multiplicity;
    } else {
      blocks.push_back({x, 1});
    }
  }
  return solve(blocks, deck.total(), m);
}

const ExactProb& GreedyEngine::solve(std::vector<Block>& blocks, int cards, int m) {
  if (m == 0 || blocks.back().count == 0) return one();

  std::string key;
  key.reserve(4 * (2 * blocks.size() + 1));
  auto put = [&key](int x) {
    key.append(reinterpret_cast<const char*>(&x), sizeof x);
  };
  put(m);
  for (const Block& b : blocks) {
    put(b.count);
    put(b.multiplicity);
  }
  if (const ExactProb* hit = memo_.find(key)) return *hit;

  ExactProb sum = 0;
  const std::size_t last = blocks.size() - 1;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    // The named value sits in the last (minimum-count) block.
    const int drawable = blocks[k].multiplicity - (k == last ? 1 : 0);
    if (drawable == 0) continue;
    const int count = blocks[k].count;

    std::vector<Block> child = blocks;
    --child[k].multiplicity;
    if (k + 1 < child.size() && child[k + 1].count == count - 1) {
      ++child[k + 1].multiplicity;
    } else {
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(k) + 1, Block{count - 1, 1});
    }
    if (child[k].multiplicity == 0) child.erase(child.begin() + static_cast<std::ptrdiff_t>(k));

    sum += ExactProb(static_cast<long>(drawable) * count) * solve(child, cards - 1, m - 1);
  }
  sum /= cards;
  return memo_.insert(std::move(key), std::move(sum));
}

std::vector<ExactProb> GreedyEngine::bid_values(std::span<const int> counts, int m) {
  const int cards = sum_of(counts);
  if (m < 1) throw DomainError("bid_values: at least one round must remain");
  if (cards < 1) throw DomainError("bid_values: the deck is empty");
  if (m > cards) throw DomainError("bid_values: more rounds than cards");
  for (int x : counts) {
    if (x < 0) throw DomainError("bid_values: negative count");
  }

  // Continuation value after a card of value h is drawn.
  std::vector<ExactProb> after(counts.size());
  for (std::size_t h = 0; h < counts.size(); ++h) {
    if (counts[h] == 0) continue;
    Counts rest(counts.begin(), counts.end());
    --rest[h];
    after[h] = win_prob(DeckComposition::canonical(rest), m - 1);
  }

  std::vector<ExactProb> values(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    ExactProb v = 0;
    for (std::size_t h = 0; h < counts.size(); ++h) {
      if (h != j && counts[h] > 0) v += counts[h] * after[h];
    }
    values[j] = v / cards;
  }
  return values;
}

ExactProb two_value_prob(int s1, int s2, int b1, int b2) {
  if (s2 < 0 || s1 < s2) throw DomainError("two_value_prob: need s1 >= s2 >= 0");
  if (b1 < 0 || b2 < 0) throw DomainError("two_value_prob: bids must be non-negative");
  if (b1 + b2 > s1 + s2) throw DomainError("two_value_prob: more bids than cards");
  return make_rational(binomial(s1 + s2 - b1 - b2, s1 - b2), binomial(s1 + s2, s1));
}

std::pair<int, int> greedy_two_value_split(int s1, int s2, int m) {
  if (s2 < 0 || s1 < s2) throw DomainError("greedy_two_value_split: need s1 >= s2 >= 0");
  if (m < 0 || m > s1 + s2) throw DomainError("greedy_two_value_split: rounds out of range");
  if (m <= s1 - s2) return {0, m};
  const int left = s1 + s2 - m;
  const int left2 = left / 2;
  const int left1 = left - left2;
  return {s2 - left2, s1 - left1};
}

ExactProb min_adaptive_prob(const DeckComposition& deck, int m) {
  const GameState state(deck, m);
  if (is_decided(state)) return 0;
  const int c = deck.total();
  const int top = deck.max();
  ExactProb p = 1;
  for (int i = 0; i < m; ++i) p *= make_rational(c - top - i, c - i);
  return p;
}

ExactProb closed_form_qk1(int q, int k) {
  if (q < 1 || k < 1) throw DomainError("closed_form_qk1: need q, k >= 1");
  return make_rational(1, q + 1) + make_rational(1, k + 1) - make_rational(1, q + k + 1);
}

namespace {

struct Term {
  long num;
  long den;
  int shift;  // contributes num / (den * (i + shift))
};

struct FamilySpec {
  Family family;
  const char* name;
  int min_index;
  int second;
  int third;
  long const_num;
  long const_den;
  std::vector<Term> terms;
};

const std::array<FamilySpec, 4>& family_specs() {
  static const std::array<FamilySpec, 4> specs{{
      {Family::i22, "i22", 2, 2, 2, 1, 6,
       {{8, 3, 1}, {-6, 1, 2}, {6, 1, 3}, {-8, 3, 4}}},
      {Family::i32, "i32", 3, 3, 2, 1, 10,
       {{2, 1, 1}, {-9, 1, 3}, {12, 1, 4}, {-5, 1, 5}}},
      {Family::i42, "i42", 4, 4, 2, 1, 15,
       {{2, 1, 1}, {-2, 1, 2}, {4, 1, 3}, {-16, 1, 4}, {20, 1, 5}, {-8, 1, 6}}},
      {Family::i33, "i33", 3, 3, 3, 1, 20,
       {{51, 10, 1}, {-39, 2, 2}, {39, 1, 3}, {-48, 1, 4}, {33, 1, 5}, {-48, 5, 6}}},
  }};
  return specs;
}

const FamilySpec& spec_of(Family family) {
  for (const auto& s : family_specs()) {
    if (s.family == family) return s;
  }
  throw DomainError("unknown closed-form family");
}

}  // namespace

ExactProb closed_form_family(Family family, int i) {
  const FamilySpec& spec = spec_of(family);
  if (i < spec.min_index) {
    throw DomainError("closed form " + std::string(spec.name) + " holds only for i >= " +
                      std::to_string(spec.min_index));
  }
  ExactProb value = make_rational(spec.const_num, spec.const_den);
  for (const Term& t : spec.terms) {
    value += make_rational(t.num, t.den * (i + t.shift));
  }
  return value;
}

int family_min_index(Family family) { return spec_of(family).min_index; }

ExactProb family_constant_term(Family family) {
  const FamilySpec& spec = spec_of(family);
  return make_rational(spec.const_num, spec.const_den);
}

DeckComposition family_deck(Family family, int i) {
  const FamilySpec& spec = spec_of(family);
  const int raw[] = {i, spec.second, spec.third};
  return DeckComposition::canonical(raw);
}

DeckComposition family_tail(Family family) {
  const FamilySpec& spec = spec_of(family);
  const int raw[] = {spec.second, spec.third};
  return DeckComposition::canonical(raw);
}

std::string family_name(Family family) { return spec_of(family).name; }

Family parse_family(std::string_view name) {
  for (const auto& s : family_specs()) {
    if (name == s.name) return s.family;
  }
  throw NotationError("unknown closed-form family '" + std::string(name) + "'");
}

}  // namespace dundee
