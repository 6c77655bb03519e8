#include "doctest.h"

#include "dundee/verification.hpp"

using namespace dundee;

TEST_CASE("suite reports") {
  SuiteReport r;
  r.name = "x";
  r.check(true, "fine");
  r.check(false, "broken");
  CHECK(r.checks == 2);
  CHECK(r.violation_count == 1);
  CHECK_FALSE(r.passed());
  SuiteReport other;
  other.name = "y";
  other.check(true, "");
  other.counters["k"] = 3;
  r.merge(other);
  CHECK(r.checks == 3);
  CHECK(r.counters["y.k"] == 3);
  const auto j = r.to_json();
  CHECK(j["violations"].size() == 1);
  CHECK(j["passed"] == false);
}

TEST_CASE("deck lists for the exhaustive suites") {
  const auto decks = decks_up_to(3);
  // c=1: v=1,2 -> 2; c=2: V_{1,2},V_{2,2},V_{3,2} -> 1+2+2; c=3: 1+2+3+3
  CHECK(decks.size() == 2 + 5 + 9);
}

TEST_CASE("small exhaustive suites pass") {
  GreedyEngine greedy;
  AdvanceEngine advance;
  CHECK(verify_adaptive_oracle(greedy, 6).passed());
  CHECK(verify_advance_minimum(advance, 6).passed());
  CHECK(verify_advance_oracle(advance, 6, 5).passed());
  CHECK(verify_permanent_identity(advance, 7, 5, 50, 3).passed());
  const auto lemmas = lemma_suite(greedy, 6, 4);
  CHECK(lemmas.passed());
  CHECK(lemmas.counters.count("two_value_equal") == 1);
  CHECK(lemma_suite(greedy, 5, 1).passed());
  CHECK(verify_closed_forms(greedy, 6, 12).passed());
  CHECK(verify_monotonicity(greedy, 6).passed());
}

TEST_CASE("regular threshold search") {
  GreedyEngine greedy;
  SuiteReport r;
  // g(4,...,4) is 0.1884... at v = 8 and 0.2080... at v = 9.
  CHECK(regular_threshold(greedy, 4, make_rational(1, 5), 20, &r) == 9);
  CHECK(r.passed());
  CHECK(regular_threshold(greedy, 4, make_rational(99, 100), 6) == 0);
}
