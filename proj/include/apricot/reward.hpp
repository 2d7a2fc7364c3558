#pragma once

#include "apricot/plan.hpp"
#include "apricot/preference.hpp"

namespace apricot {

// Whether placing the object at the semantic target is allowed by the
// preference, given the category-level state right before the action.
// Throws UncoveredCategoryError when the preference lacks the category.
bool satisfies(const std::string& object, SpecificLocation target, const Preference& theta,
               const Occupancy& stateAtAction, const Catalog& catalog);

// Fraction of actions whose target satisfies theta, each judged against the
// evolving state (earlier actions applied at their targets). Empty plan: 1.
double reward(const Plan& plan, const Preference& theta, const Catalog& catalog);

// Reward 1 on every demonstrated plan.
bool consistentWithDemos(const Preference& theta, const std::vector<Demonstration>& demos,
                         const Catalog& catalog);

// Per-category variant used for candidate enumeration: walks each demo plan
// with the full evolving state but only judges actions of `category` against
// `req`. Other categories influence the state (anchors, shelf contents) but
// are not judged.
bool consistentWithDemosForCategory(const Requirement& req, Category category,
                                    const std::vector<Demonstration>& demos,
                                    const Catalog& catalog);

// Value-level equivalence with the ground truth: the plan produced for a
// candidate preference achieves the optimal ground-truth reward (1.0 unless
// the scenario's optimum is known to be lower).
bool preferenceEquivalent(const Plan& planForCandidate, const Preference& groundTruth,
                          const Catalog& catalog, double optimalReward = 1.0);

} // namespace apricot
