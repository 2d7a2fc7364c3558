#include "apricot/reward.hpp"

#include <algorithm>

#include "apricot/errors.hpp"

namespace apricot {

bool satisfies(const std::string& object, SpecificLocation target, const Preference& theta,
               const Occupancy& stateAtAction, const Catalog& catalog) {
    const ObjectSpec& spec = catalog.lookup(object);
    auto it = theta.requirements.find(spec.category);
    if (it == theta.requirements.end())
        throw UncoveredCategoryError("preference does not cover category "
                                     + std::string(categoryName(spec.category)) + " (object "
                                     + object + ")");
    auto admissible = admissibleLocations(it->second, spec.attributes, stateAtAction, spec.category);
    return std::find(admissible.begin(), admissible.end(), target) != admissible.end();
}

double reward(const Plan& plan, const Preference& theta, const Catalog& catalog) {
    if (plan.actions.empty()) return 1.0;
    Occupancy state = plan.initialState.occupancy(catalog);
    std::size_t satisfied = 0;
    for (const PlanAction& a : plan.actions) {
        if (satisfies(a.object, a.target, theta, state, catalog)) ++satisfied;
        state.add(a.object, catalog.lookup(a.object).category, a.target);
    }
    return static_cast<double>(satisfied) / static_cast<double>(plan.actions.size());
}

bool consistentWithDemos(const Preference& theta, const std::vector<Demonstration>& demos,
                         const Catalog& catalog) {
    for (const Demonstration& demo : demos)
        if (reward(demoAsPlan(demo, catalog), theta, catalog) < 1.0) return false;
    return true;
}

bool consistentWithDemosForCategory(const Requirement& req, Category category,
                                    const std::vector<Demonstration>& demos,
                                    const Catalog& catalog) {
    for (const Demonstration& demo : demos) {
        Plan plan = demoAsPlan(demo, catalog);
        Occupancy state = plan.initialState.occupancy(catalog);
        for (const PlanAction& a : plan.actions) {
            const ObjectSpec& spec = catalog.lookup(a.object);
            if (spec.category == category) {
                auto admissible = admissibleLocations(req, spec.attributes, state, category);
                if (std::find(admissible.begin(), admissible.end(), a.target) == admissible.end())
                    return false;
            }
            state.add(a.object, spec.category, a.target);
        }
    }
    return true;
}

bool preferenceEquivalent(const Plan& planForCandidate, const Preference& groundTruth,
                          const Catalog& catalog, double optimalReward) {
    return reward(planForCandidate, groundTruth, catalog) >= optimalReward - 1e-9;
}

} // namespace apricot
