#include <doctest.h>

#include "apricot/errors.hpp"
#include "apricot/preference.hpp"

using namespace apricot;

namespace {

const SpecificLocation kTL{Shelf::Top, Side::Left};
const SpecificLocation kTR{Shelf::Top, Side::Right};
const SpecificLocation kML{Shelf::Middle, Side::Left};
const SpecificLocation kMR{Shelf::Middle, Side::Right};
const SpecificLocation kBL{Shelf::Bottom, Side::Left};
const SpecificLocation kBR{Shelf::Bottom, Side::Right};

std::vector<SpecificLocation> all6() {
    return {kAllSpecificLocations.begin(), kAllSpecificLocations.end()};
}

} // namespace

TEST_CASE("canonicalize validates requirement structure") {
    CHECK_NOTHROW(canonicalize(Requirement{SpecificLoc{kTL}}, Category::Fruits));
    CHECK_NOTHROW(
        canonicalize(Requirement{ExceptionForAttribute{kTL, "big", kBR}}, Category::Fruits));
    CHECK_THROWS_AS(
        canonicalize(Requirement{ExceptionForAttribute{kTL, "big", kTL}}, Category::Fruits),
        MalformedRequirementError);
    CHECK_THROWS_AS(
        canonicalize(Requirement{ExceptionForAttribute{kTL, "", kBR}}, Category::Fruits),
        MalformedRequirementError);
    CHECK_THROWS_AS(canonicalize(Requirement{ConditionalOnSpace{kTL, 2, kTL}}, Category::Fruits),
                    MalformedRequirementError);
    CHECK_THROWS_AS(canonicalize(Requirement{ConditionalOnSpace{kTL, 0, kBR}}, Category::Fruits),
                    MalformedRequirementError);
    CHECK_THROWS_AS(canonicalize(Requirement{ConditionalOnSpace{kTL, 4, kBR}}, Category::Fruits),
                    MalformedRequirementError);
    CHECK_NOTHROW(canonicalize(Requirement{ConditionalOnSpace{kTL, 3, kBR}}, Category::Fruits));
    CHECK_THROWS_AS(canonicalize(Requirement{SameShelfAs{Category::Fruits}}, Category::Fruits),
                    MalformedRequirementError);
    CHECK_NOTHROW(canonicalize(Requirement{SameShelfAs{Category::Condiments}}, Category::Fruits));
}

TEST_CASE("requirement keys are stable and distinct") {
    CHECK(requirementKey(SpecificLoc{kTL}) != requirementKey(SpecificLoc{kTR}));
    CHECK(requirementKey(SpecificLoc{kTL}) == requirementKey(SpecificLoc{kTL}));
    CHECK(requirementKey(GeneralLoc{GeneralLocation::TopShelf})
          != requirementKey(SpecificLoc{kTL}));
    CHECK(requirementKey(ConditionalOnSpace{kTL, 2, kBR})
          != requirementKey(ConditionalOnSpace{kTL, 3, kBR}));
}

TEST_CASE("question phrasing for each requirement type") {
    CHECK(describeRequirement(Category::Fruits, SpecificLoc{kTL})
          == "fruits to be placed at the left side of top shelf");
    CHECK(describeRequirement(Category::Vegetables,
                              GeneralLoc{GeneralLocation::LeftSideOfFridge})
          == "vegetables to be placed anywhere on the left side of fridge");
    CHECK(describeRequirement(Category::JuiceAndSoftDrinks, TogetherSameCategory{})
          == "juice-and-soft-drinks to be placed together next to existing "
             "juice-and-soft-drinks regardless of which shelf they are on");
    CHECK(describeRequirement(Category::Fruits, SameShelfAs{Category::Condiments})
          == "fruits to be placed on the same shelf next to condiments");
    CHECK(describeRequirement(Category::DairyProducts,
                              ExceptionForAttribute{kTL, "cheese", kBR})
          == "dairy-products to be placed at the left side of top shelf, except cheese ones "
             "at the right side of bottom shelf");
    CHECK(describeRequirement(Category::Condiments, ConditionalOnSpace{kML, 2, kBR})
          == "condiments to be placed at the left side of middle shelf while it holds fewer "
             "than 2 of them, otherwise at the right side of bottom shelf");
}

TEST_CASE("admissible locations: pinned and general") {
    Occupancy empty;
    CHECK(admissibleLocations(SpecificLoc{kMR}, {}, empty, Category::Fruits)
          == std::vector<SpecificLocation>{kMR});
    CHECK(admissibleLocations(GeneralLoc{GeneralLocation::RightSideOfFridge}, {}, empty,
                              Category::Fruits)
          == std::vector<SpecificLocation>{kTR, kMR, kBR});
    CHECK(admissibleLocations(GeneralLoc{GeneralLocation::MiddleShelf}, {}, empty,
                              Category::Fruits)
          == std::vector<SpecificLocation>{kML, kMR});
}

TEST_CASE("admissible locations: together-with-category follows the anchors") {
    Occupancy state;
    CHECK(admissibleLocations(TogetherSameCategory{}, {}, state, Category::Fruits) == all6());

    state.add("apple", Category::Fruits, kTL);
    CHECK(admissibleLocations(TogetherSameCategory{}, {}, state, Category::Fruits)
          == std::vector<SpecificLocation>{kTL});

    state.add("banana", Category::Fruits, kBR);
    CHECK(admissibleLocations(TogetherSameCategory{}, {}, state, Category::Fruits)
          == std::vector<SpecificLocation>{kTL, kBR});

    // Other categories are not anchors.
    state.add("coke", Category::JuiceAndSoftDrinks, kML);
    CHECK(admissibleLocations(TogetherSameCategory{}, {}, state, Category::Fruits)
          == std::vector<SpecificLocation>{kTL, kBR});
}

TEST_CASE("admissible locations: same-shelf-as tracks the other category's shelves") {
    Occupancy state;
    SameShelfAs req{Category::Condiments};
    CHECK(admissibleLocations(req, {}, state, Category::Fruits) == all6());

    state.add("ketchup", Category::Condiments, kMR);
    CHECK(admissibleLocations(req, {}, state, Category::Fruits)
          == std::vector<SpecificLocation>{kML, kMR});

    state.add("mustard", Category::Condiments, kBL);
    CHECK(admissibleLocations(req, {}, state, Category::Fruits)
          == std::vector<SpecificLocation>{kML, kMR, kBL, kBR});
}

TEST_CASE("admissible locations: attribute exception splits the category") {
    Occupancy empty;
    ExceptionForAttribute req{kTL, "big", kBR};
    CHECK(admissibleLocations(req, {}, empty, Category::Fruits)
          == std::vector<SpecificLocation>{kTL});
    CHECK(admissibleLocations(req, {"big"}, empty, Category::Fruits)
          == std::vector<SpecificLocation>{kBR});
    CHECK(admissibleLocations(req, {"small"}, empty, Category::Fruits)
          == std::vector<SpecificLocation>{kTL});
}

TEST_CASE("admissible locations: conditional counts only the owning category") {
    Occupancy state;
    ConditionalOnSpace req{kTL, 2, kBR};
    CHECK(admissibleLocations(req, {}, state, Category::Condiments)
          == std::vector<SpecificLocation>{kTL});

    state.add("ketchup", Category::Condiments, kTL);
    CHECK(admissibleLocations(req, {}, state, Category::Condiments)
          == std::vector<SpecificLocation>{kTL});

    // Foreign objects at the primary do not count toward the capacity.
    state.add("apple", Category::Fruits, kTL);
    state.add("banana", Category::Fruits, kTL);
    CHECK(admissibleLocations(req, {}, state, Category::Condiments)
          == std::vector<SpecificLocation>{kTL});

    state.add("mustard", Category::Condiments, kTL);
    CHECK(admissibleLocations(req, {}, state, Category::Condiments)
          == std::vector<SpecificLocation>{kBR});
}

TEST_CASE("preference canonicalization and keys") {
    Preference p;
    p.requirements.emplace(Category::Fruits, SpecificLoc{kTL});
    p.requirements.emplace(Category::Vegetables, GeneralLoc{GeneralLocation::BottomShelf});
    Preference q = p;
    CHECK(preferenceKey(p) == preferenceKey(q));
    CHECK_NOTHROW(canonicalize(p));

    q.requirements.at(Category::Fruits) = SpecificLoc{kTR};
    CHECK(preferenceKey(p) != preferenceKey(q));

    Preference bad = p;
    bad.requirements.at(Category::Vegetables) = ConditionalOnSpace{kTL, 9, kBR};
    CHECK_THROWS_AS(canonicalize(bad), MalformedRequirementError);
}
