#include <doctest.h>

#include <algorithm>

#include "apricot/errors.hpp"
#include "apricot/json_io.hpp"
#include "apricot/planner.hpp"
#include "apricot/rng.hpp"

using namespace apricot;

namespace {

const SpecificLocation kTL{Shelf::Top, Side::Left};
const SpecificLocation kTR{Shelf::Top, Side::Right};
const SpecificLocation kML{Shelf::Middle, Side::Left};
const SpecificLocation kBL{Shelf::Bottom, Side::Left};
const SpecificLocation kBR{Shelf::Bottom, Side::Right};

const Catalog& cat() { return Catalog::builtin(); }

Preference homes() {
    Preference p;
    p.requirements.emplace(Category::Fruits, SpecificLoc{kTL});
    p.requirements.emplace(Category::Vegetables, SpecificLoc{kTR});
    p.requirements.emplace(Category::Condiments, SpecificLoc{kBL});
    p.requirements.emplace(Category::DairyProducts, SpecificLoc{kBR});
    p.requirements.emplace(Category::JuiceAndSoftDrinks, SpecificLoc{kML});
    return p;
}

} // namespace

TEST_CASE("semantic pass sends objects to the first admissible location") {
    auto steps = semanticPlan(FridgeState{}, {"apple", "carrot"}, homes(), {}, cat());
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].target == kTL);
    CHECK(steps[1].target == kTR);
    CHECK(!steps[0].preferenceSacrificed);
}

TEST_CASE("semantic pass respects exclusions and general-location order") {
    Preference p = homes();
    p.requirements.at(Category::Fruits) = GeneralLoc{GeneralLocation::TopShelf};

    auto noExcl = semanticPlan(FridgeState{}, {"apple"}, p, {}, cat());
    CHECK(noExcl[0].target == kTL); // expansion order: left before right

    ExclusionMap excl;
    excl["apple"].insert(kTL);
    auto excluded = semanticPlan(FridgeState{}, {"apple"}, p, excl, cat());
    CHECK(excluded[0].target == kTR);
    CHECK(!excluded[0].preferenceSacrificed);
}

TEST_CASE("semantic pass sacrifices the preference once all options are excluded") {
    ExclusionMap excl;
    excl["apple"].insert(kTL); // only admissible home under homes()
    FridgeState crowded;
    crowded = crowded.applied({"coke", Shelf::Middle, 10.0}, cat());

    auto steps = semanticPlan(crowded, {"apple"}, homes(), excl, cat());
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].preferenceSacrificed);
    // Least-occupied non-excluded region, canonical tie-break: top-left is
    // banned and the middle-left holds the coke, so top-right wins.
    CHECK(steps[0].target == kTR);
}

TEST_CASE("beam search packs what fits and reports what does not") {
    // Three width-12 objects into one 30 cm half-shelf: only two fit
    // (12+12+12 = 36 > 30), and the search must realize both.
    Preference p = homes();
    p.requirements.at(Category::Vegetables) = SpecificLoc{kTL};
    std::vector<SemanticStep> steps = {
        {"watermelon", kTL, false}, {"pineapple", kTL, false}, {"lettuce", kTL, false}};
    // watermelon is width 15: 15 + 12 = 27 <= 30, adding 12 more does not fit.
    auto [plan, feedback] = beamSearch(FridgeState{}, steps, p, PlannerConfig{}, cat());
    CHECK(plan.placedCount() == 2);
    REQUIRE(feedback.has_value());
    REQUIRE(feedback->infeasibleObjects.size() == 1);
    // The named object is the one whose action carries no coordinate.
    for (const auto& a : plan.actions)
        CHECK(a.x.has_value() == (a.object != feedback->infeasibleObjects[0]));
    CHECK(constraint(FridgeState{}, plan, cat()).violated == 1);
}

TEST_CASE("beam search fills an empty region without violations") {
    std::vector<SemanticStep> steps = {
        {"apple", kTL, false}, {"peach", kTL, false}, {"banana", kTL, false}};
    auto [plan, feedback] = beamSearch(FridgeState{}, steps, homes(), PlannerConfig{}, cat());
    CHECK(plan.placedCount() == 3);
    CHECK(!feedback.has_value());
    CHECK(constraint(FridgeState{}, plan, cat()).violated == 0);
    CHECK(reward(plan, homes(), cat()) == 1.0);
}

TEST_CASE("refinement reroutes a failed placement and keeps the reward") {
    // Bottom-left is nearly full; vegetables prefer the bottom shelf and try
    // left first, fail geometrically, and must be excluded into bottom-right.
    Preference p = homes();
    p.requirements.at(Category::Vegetables) = GeneralLoc{GeneralLocation::BottomShelf};

    FridgeState s0;
    s0 = s0.applied({"watermelon", Shelf::Bottom, 13.0}, cat()); // [5.5, 20.5]
    s0 = s0.applied({"pineapple", Shelf::Bottom, 28.0}, cat());  // [22, 34]

    auto result = planWithRefinement(s0, {"cabbage"}, p, PlannerConfig{}, cat());
    CHECK(result.trace.size() <= 4);
    CHECK(result.trace.size() >= 2); // first attempt must fail
    REQUIRE(result.plan.actions.size() == 1);
    CHECK(result.plan.actions[0].target == kBR);
    CHECK(result.plan.placedCount() == 1);
    CHECK(constraint(s0, result.plan, cat()).violated == 0);
    CHECK(reward(result.plan, p, cat()) == 1.0);
}

TEST_CASE("planning is deterministic") {
    FridgeState s0;
    s0 = s0.applied({"whole-milk", Shelf::Middle, 20.0}, cat());
    std::vector<std::string> task = {"apple", "carrot", "ketchup", "cheese", "coke", "banana"};

    auto a = planWithRefinement(s0, task, homes(), PlannerConfig{}, cat());
    auto b = planWithRefinement(s0, task, homes(), PlannerConfig{}, cat());
    CHECK(planToJson(a.plan).dump() == planToJson(b.plan).dump());
    CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("brute-force reference packs leftmost on the grid") {
    Preference p = homes();
    FridgeState s0;
    // watermelon (15) then pineapple (12) into the 30 cm top-left region.
    // Leftmost grid multiples: 15/2 = 7.5 -> 8, then 8 + (15+12)/2 + 1 cm
    // clearance = 22.5 -> 24.
    Plan plan = bruteForceOptimal(s0, {"watermelon", "pineapple"}, p, cat());
    REQUIRE(plan.actions.size() == 2);
    CHECK(plan.placedCount() == 2);
    CHECK(reward(plan, p, cat()) == 1.0);
    CHECK(plan.actions[0].object == "watermelon");
    CHECK(plan.actions[0].target == kTL);
    CHECK(plan.actions[0].x == 8.0);
    CHECK(plan.actions[1].object == "pineapple");
    CHECK(plan.actions[1].target == kTL);
    CHECK(plan.actions[1].x == 24.0);
    CHECK(constraint(s0, plan, cat()).violated == 0);
}

TEST_CASE("brute force refuses large instances") {
    std::vector<std::string> six = {"apple", "banana", "peach", "carrot", "coke", "butter"};
    CHECK_THROWS_AS(bruteForceOptimal(FridgeState{}, six, homes(), cat()),
                    IntractableInstanceError);
}

TEST_CASE("beam planner matches the exhaustive reference on uncontended instances") {
    // Randomized one-object-per-category tasks into an empty fridge: every
    // region gets at most one object, so both planners place everything.
    Rng rng(424242);
    const auto& objects = cat().objects();
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<std::string> task;
        for (Category c : {Category::Fruits, Category::Vegetables, Category::Condiments,
                           Category::DairyProducts}) {
            std::vector<std::string> pool;
            for (const auto& o : objects)
                if (o.category == c) pool.push_back(o.name);
            task.push_back(pool[rng.index(pool.size())]);
        }
        auto planned = planWithRefinement(FridgeState{}, task, homes(), PlannerConfig{}, cat());
        Plan best = bruteForceOptimal(FridgeState{}, task, homes(), cat());
        CHECK(planned.plan.placedCount() == 4);
        CHECK(best.placedCount() == 4);
        CHECK(reward(planned.plan, homes(), cat()) == 1.0);
        CHECK(reward(best, homes(), cat()) == 1.0);
    }
}
