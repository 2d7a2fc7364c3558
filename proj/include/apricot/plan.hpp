#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apricot/world.hpp"

namespace apricot {

// One put-away step: a semantic target plus, when the geometric search
// succeeded, a concrete center coordinate on the target's shelf.
struct PlanAction {
    std::string object;
    SpecificLocation target{Shelf::Top, Side::Left};
    std::optional<double> x; // absent = object could not be placed

    friend bool operator==(const PlanAction&, const PlanAction&) = default;
};

struct Plan {
    FridgeState initialState;
    std::vector<PlanAction> actions;
    std::vector<std::string> sacrificed; // placements that gave up the preference

    std::size_t placedCount() const {
        std::size_t n = 0;
        for (const auto& a : actions)
            if (a.x) ++n;
        return n;
    }
};

struct ConstraintResult {
    int violated = 0; // 0 or 1
    std::vector<std::string> violators;
};

// Simulates the actions in order against the geometry. An action violates if
// it lacks a coordinate or its placement collides; violators take no space.
ConstraintResult constraint(const FridgeState& s0, const Plan& plan, const Catalog& catalog);

// Demonstration of the preference: a fridge before, the same fridge after
// the demonstrator put away `putAway` (before's placements untouched).
struct Demonstration {
    FridgeState before;
    FridgeState after;
    std::vector<std::string> putAway;
};

// Reconstructs the demonstrated plan by diffing after against before.
// Actions are ordered by canonical location order, then by object name.
Plan demoAsPlan(const Demonstration& demo, const Catalog& catalog);

} // namespace apricot
