#include "apricot/plan.hpp"

#include <algorithm>

#include "apricot/errors.hpp"

namespace apricot {

ConstraintResult constraint(const FridgeState& s0, const Plan& plan, const Catalog& catalog) {
    ConstraintResult result;
    FridgeState cur = s0;
    for (const PlanAction& a : plan.actions) {
        if (!a.x) {
            result.violators.push_back(a.object);
            continue;
        }
        Placement p{a.object, a.target.shelf, *a.x};
        if (cur.collides(p, catalog)) {
            result.violators.push_back(a.object);
            continue; // a colliding placement is not executed
        }
        cur = cur.applied(p, catalog);
    }
    result.violated = result.violators.empty() ? 0 : 1;
    return result;
}

Plan demoAsPlan(const Demonstration& demo, const Catalog&) {
    Plan plan;
    plan.initialState = demo.before;
    std::vector<Placement> added;
    for (const Placement& p : demo.after.placements())
        if (!demo.before.find(p.object)) added.push_back(p);

    const FridgeGeometry& g = demo.after.geometry();
    std::sort(added.begin(), added.end(), [&](const Placement& a, const Placement& b) {
        int la = locationIndex(semanticLocation(a, g));
        int lb = locationIndex(semanticLocation(b, g));
        if (la != lb) return la < lb;
        return a.object < b.object;
    });
    for (const Placement& p : added)
        plan.actions.push_back({p.object, semanticLocation(p, g), p.x});
    return plan;
}

} // namespace apricot
