#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "apricot/catalog.hpp"
#include "apricot/world.hpp"

namespace apricot {

// One requirement per category, drawn from a small closed grammar.

// "fruits must be placed at the left side of the top shelf"
struct SpecificLoc {
    SpecificLocation loc;
    friend bool operator==(const SpecificLoc&, const SpecificLoc&) = default;
};

// "fruits must be placed on the left side of the fridge"
struct GeneralLoc {
    GeneralLocation loc;
    friend bool operator==(const GeneralLoc&, const GeneralLoc&) = default;
};

// "vegetables must be placed together next to existing vegetables"
struct TogetherSameCategory {
    friend bool operator==(const TogetherSameCategory&, const TogetherSameCategory&) = default;
};

// "fruits must be placed on the same shelf next to condiments"
struct SameShelfAs {
    Category other;
    friend bool operator==(const SameShelfAs&, const SameShelfAs&) = default;
};

// "dairy products go to base, except cheese ones which go to exceptionLoc"
struct ExceptionForAttribute {
    SpecificLocation base;
    std::string attribute;
    SpecificLocation exceptionLoc;
    friend bool operator==(const ExceptionForAttribute&, const ExceptionForAttribute&) = default;
};

// "condiments go to primary while it holds fewer than capacity of them,
// afterwards to fallback"
struct ConditionalOnSpace {
    SpecificLocation primary;
    int capacity = 1; // 1..3
    SpecificLocation fallback;
    friend bool operator==(const ConditionalOnSpace&, const ConditionalOnSpace&) = default;
};

using Requirement = std::variant<SpecificLoc, GeneralLoc, TogetherSameCategory, SameShelfAs,
                                 ExceptionForAttribute, ConditionalOnSpace>;

enum class RequirementType {
    SpecificLoc,
    GeneralLoc,
    TogetherSameCategory,
    SameShelfAs,
    ExceptionForAttribute,
    ConditionalOnSpace,
};

RequirementType requirementType(const Requirement& r);
std::string_view requirementTypeName(RequirementType t);

// Validates structural invariants (base != exceptionLoc, primary != fallback,
// capacity in 1..3) and returns the canonical copy. Throws
// MalformedRequirementError. `owner` guards SameShelfAs(other != owner).
Requirement canonicalize(const Requirement& r, Category owner);

// Stable text key for dedup and equality checks.
std::string requirementKey(const Requirement& r);

// Human phrasing used in questions: "fruits to be placed at the left side of
// top shelf" etc. (subject + requirement clause, no trailing punctuation).
std::string describeRequirement(Category owner, const Requirement& r);

struct Preference {
    std::map<Category, Requirement> requirements; // canonical category order

    friend bool operator==(const Preference&, const Preference&) = default;
};

// Validates every entry; throws MalformedRequirementError.
Preference canonicalize(const Preference& p);
std::string preferenceKey(const Preference& p);

// Locations where an object with the given attributes may go under the
// requirement, evaluated against the current category-level state. Ordered
// canonically. The anchor-free Together/SameShelfAs case returns all six.
std::vector<SpecificLocation> admissibleLocations(const Requirement& req,
                                                  const std::set<std::string>& objectAttributes,
                                                  const Occupancy& state, Category category);

// Convenience overload working from the geometric state.
std::vector<SpecificLocation> admissibleLocations(const Requirement& req,
                                                  const std::set<std::string>& objectAttributes,
                                                  const FridgeState& state, const Catalog& catalog,
                                                  Category category);

} // namespace apricot
