#include "doctest.h"

#include <algorithm>
#include <set>

#include "dundee/deck.hpp"
#include "dundee/errors.hpp"

using namespace dundee;

namespace {

DeckComposition deck(std::vector<int> counts) { return DeckComposition::canonical(counts); }

}  // namespace

TEST_CASE("canonical form sorts non-increasingly") {
  CHECK(deck({1, 3, 2}).counts() == Counts{3, 2, 1});
  CHECK(deck({4, 4, 4}).counts() == Counts{4, 4, 4});
  CHECK(deck({0, 2}).counts() == Counts{2, 0});
  CHECK(deck({0, 2}).total() == 2);
  CHECK(deck({2, 2, 1}).min() == 1);
  CHECK(deck({4, 4, 4}).is_regular());
  CHECK_THROWS_AS(deck({}), DomainError);
  CHECK_THROWS_AS(deck({1, -1}), DomainError);
}

TEST_CASE("removing one card") {
  CHECK(remove_one(deck({3, 2, 2}), 0).counts() == Counts{2, 2, 2});
  CHECK(remove_one(deck({3, 2, 2}), 1).counts() == Counts{3, 2, 1});
  CHECK(remove_one(deck({3, 2, 2}), 2).counts() == Counts{3, 2, 1});
  CHECK(remove_one(deck({2, 2}), 0).counts() == Counts{2, 1});
  CHECK_THROWS(remove_one(deck({2, 0}), 1));
}

TEST_CASE("majorization examples") {
  CHECK(majorizes(deck({2, 0}), deck({1, 1})));
  CHECK_FALSE(majorizes(deck({1, 1}), deck({2, 0})));
  CHECK(majorizes(deck({2, 1}), deck({2, 1})));
  CHECK_THROWS_AS(majorizes(deck({2, 1}), deck({2, 2})), DomainError);
  CHECK_THROWS_AS(majorizes(deck({2, 1}), deck({2, 1, 0})), DomainError);
}

TEST_CASE("majorization is a partial order on every class V_{v,c}") {
  for (int c = 0; c <= 8; ++c) {
    for (int v = 1; v <= 5; ++v) {
      const auto cls = compositions_of(v, c);
      for (const auto& a : cls) {
        CHECK(majorizes(a, a));
        for (const auto& b : cls) {
          if (majorizes(a, b) && majorizes(b, a)) CHECK(a == b);
          if (!majorizes(a, b)) continue;
          for (const auto& x : cls) {
            if (majorizes(b, x)) CHECK(majorizes(a, x));
          }
        }
      }
    }
  }
}

TEST_CASE("majorization product") {
  CHECK(p_product(Counts{2, 0}, Counts{1, 1}) == 2);
  CHECK(p_product(Counts{1, 1}, Counts{2, 0}) == 1);
  CHECK(p_product(Counts{3, 3}, Counts{3, 3}) == 1);
  CHECK(p_product(Counts{5, 1}, Counts{2, 4}) == 60);
}

TEST_CASE("decided positions") {
  CHECK(is_decided(GameState(deck({3, 1}), 2)));
  CHECK_FALSE(is_decided(GameState(deck({2, 1, 1}), 2)));
  CHECK(is_decided(GameState(deck({1}), 1)));
  CHECK_FALSE(is_decided(GameState(deck({1}), 0)));
  CHECK_THROWS_AS(GameState(deck({1, 1}), 3), DomainError);
  CHECK_THROWS_AS(GameState(deck({1, 1}), -1), DomainError);
}

TEST_CASE("composition classes") {
  const auto cls = compositions_of(3, 4);
  CHECK(cls.size() == 4);  // (4,0,0) (3,1,0) (2,2,0) (2,1,1)
  std::set<Counts> seen;
  for (const auto& d : cls) {
    CHECK(d.size() == 3);
    CHECK(d.total() == 4);
    CHECK(std::is_sorted(d.counts().rbegin(), d.counts().rend()));
    seen.insert(d.counts());
  }
  CHECK(seen.size() == cls.size());
  CHECK(compositions_of(1, 5).size() == 1);
  CHECK(compositions_of(4, 0).size() == 1);

  // Partition counts p(1..8).
  const std::vector<std::size_t> p{1, 2, 3, 5, 7, 11, 15, 22};
  const auto parts = partitions_up_to(8);
  for (int n = 1; n <= 8; ++n) {
    const auto k = std::count_if(parts.begin(), parts.end(), [&](const DeckComposition& d) { return d.total() == n; });
    CHECK(static_cast<std::size_t>(k) == p[static_cast<std::size_t>(n - 1)]);
  }
}

TEST_CASE("deck notation") {
  CHECK(parse_counts("4,3,2") == Counts{4, 3, 2});
  CHECK(parse_counts("4x3") == Counts{4, 4, 4});
  CHECK(parse_counts("4x12,3").size() == 13);
  CHECK(parse_counts("{1, 2 ,0}") == Counts{1, 2, 0});
  CHECK(parse_counts("0x2") == Counts{0, 0});
  for (const char* bad : {"", "4,", ",4", "4x", "x3", "a", "4x0", "-1", "4,,3", "4x3x2", "{4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_counts(bad), NotationError);
  }
  CHECK(format_counts(Counts{4, 4, 4, 3}) == "4x3,3");
  CHECK(format_counts(Counts{5, 3, 2}) == "5,3,2");
  CHECK(braced(Counts{0, 4, 6}) == "{0,4,6}");
  for (const auto& d : partitions_up_to(7)) CHECK(parse_counts(format_counts(d.counts())) == d.counts());
}
