#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "dundee/advance.hpp"
#include "dundee/greedy.hpp"

namespace dundee {

/// Outcome of an exhaustive check. Only the first few violations keep a
/// witness; `violation_count` has the full tally.
struct SuiteReport {
  std::string name;
  std::size_t checks = 0;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;
  std::map<std::string, std::size_t> counters;

  bool passed() const { return violation_count == 0; }
  void check(bool ok, const std::string& witness);
  void merge(const SuiteReport& other);
  nlohmann::json to_json() const;
};

/// Decks used by the exhaustive suites: every class V_{v,c} with
/// 1 <= c <= max_cards and 1 <= v <= c + 1 (so decks with a trailing zero
/// are included).
std::vector<DeckComposition> decks_up_to(int max_cards);

/// Greedy optimality and uniqueness against the full game tree; two-value
/// closed form agreement; minimum values and minimizing first bids.
SuiteReport verify_adaptive_oracle(GreedyEngine& greedy, int max_cards);

/// Minimum advance probability and its minimizers (Hall-type zero case and
/// the concentrated-bid case) against enumeration of all bids.
SuiteReport verify_advance_minimum(AdvanceEngine& advance, int max_cards);

/// Recursion versus multiset-permutation enumeration. All bid vectors up to
/// `exhaustive_cards`, block-canonical ones beyond.
SuiteReport verify_advance_oracle(AdvanceEngine& advance, int max_cards, int exhaustive_cards);

/// c! Pr(b, s) == per M(b, s). Every bid vector of every deck up to
/// `exhaustive_cards` cards; beyond that `samples` random bids per deck.
SuiteReport verify_permanent_identity(AdvanceEngine& advance, int max_cards,
                                      int exhaustive_cards, std::size_t samples,
                                      std::uint64_t seed);

/// The majorization product inequalities and the g_m weighted inequality
/// over V_{v,c} for c <= c_max, v <= v_max.
SuiteReport lemma_suite(GreedyEngine& greedy, int c_max, int v_max);

/// g(q,k,1) for q,k <= qk_max and the four partial-fraction families for
/// i up to i_max, all against the recurrence; constant terms against g of
/// the two-value tail.
SuiteReport verify_closed_forms(GreedyEngine& greedy, int qk_max, int i_max);

/// Insertion and first-entry monotonicity of g, monotonicity in m, and the
/// large-first-entry limit trend.
SuiteReport verify_monotonicity(GreedyEngine& greedy, int max_cards);

/// Smallest v with g(count,...,count) > threshold (v entries), checking that the
/// sequence increases on the way. Returns 0 when not found by v_max.
int regular_threshold(GreedyEngine& greedy, int count, const Rational& threshold, int v_max,
                      SuiteReport* report = nullptr);

}  // namespace dundee
