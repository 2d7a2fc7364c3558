#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apricot/plan.hpp"
#include "apricot/preference.hpp"
#include "apricot/reward.hpp"

namespace apricot {

struct PlannerConfig {
    int beamWidth = 10;
    int samplesPerRegion = 10;
    int maxRefinements = 4;
};

// object -> semantic locations it must not be sent to (learned from failed
// geometric attempts).
using ExclusionMap = std::map<std::string, std::set<SpecificLocation>>;

struct SemanticStep {
    std::string object;
    SpecificLocation target{Shelf::Top, Side::Left};
    // True when every admissible location was excluded and the object fell
    // back to the least-occupied region instead.
    bool preferenceSacrificed = false;

    friend bool operator==(const SemanticStep&, const SemanticStep&) = default;
};

// Greedy category-level pass: each object (in task order) goes to the first
// admissible location not excluded for it, tracked against the evolving
// category-level state.
std::vector<SemanticStep> semanticPlan(const FridgeState& s0, const std::vector<std::string>& task,
                                       const Preference& theta, const ExclusionMap& excluded,
                                       const Catalog& catalog);

struct Feedback {
    std::vector<std::string> infeasibleObjects; // could not be placed geometrically
    int attempt = 0;
};

// Geometric search over evenly spaced candidate centers per region. Beams are
// ranked lexicographically: objects placed, then preference reward of the
// executed actions, then leftover free space. Returns the best plan and, if
// some objects could not be placed, feedback naming them.
std::pair<Plan, std::optional<Feedback>> beamSearch(const FridgeState& s0,
                                                    const std::vector<SemanticStep>& semantic,
                                                    const Preference& theta,
                                                    const PlannerConfig& cfg,
                                                    const Catalog& catalog);

struct RefinementAttempt {
    int attempt = 0;
    std::vector<SemanticStep> semantic;
    Plan plan;
    std::optional<Feedback> feedback;
};

struct PlanResult {
    Plan plan; // best across attempts (placed count, then reward)
    std::vector<RefinementAttempt> trace;
};

// Reflect-and-refine loop: after a failed geometric attempt, the failed
// (object, location) pairs are excluded and the semantic pass reruns, up to
// cfg.maxRefinements attempts.
PlanResult planWithRefinement(const FridgeState& s0, const std::vector<std::string>& task,
                              const Preference& theta, const PlannerConfig& cfg,
                              const Catalog& catalog);

// Exhaustive reference planner: object orderings x per-region leftmost
// grid-quantized centers, branch-and-bound on the satisfied count. Only for
// small instances; throws IntractableInstanceError above 5 objects.
Plan bruteForceOptimal(const FridgeState& s0, const std::vector<std::string>& task,
                       const Preference& theta, const Catalog& catalog, double gridStep = 2.0);

} // namespace apricot
