#include "apricot/preference.hpp"

#include <sstream>

#include "apricot/errors.hpp"

namespace apricot {

RequirementType requirementType(const Requirement& r) {
    return static_cast<RequirementType>(r.index());
}

std::string_view requirementTypeName(RequirementType t) {
    switch (t) {
        case RequirementType::SpecificLoc: return "specific-location";
        case RequirementType::GeneralLoc: return "general-location";
        case RequirementType::TogetherSameCategory: return "together-same-category";
        case RequirementType::SameShelfAs: return "same-shelf-as";
        case RequirementType::ExceptionForAttribute: return "exception-for-attribute";
        case RequirementType::ConditionalOnSpace: return "conditional-on-space";
    }
    throw std::logic_error("bad requirement type");
}

Requirement canonicalize(const Requirement& r, Category owner) {
    if (const auto* e = std::get_if<ExceptionForAttribute>(&r)) {
        if (e->base == e->exceptionLoc)
            throw MalformedRequirementError("exception location must differ from base");
        if (e->attribute.empty())
            throw MalformedRequirementError("exception attribute must be non-empty");
    } else if (const auto* c = std::get_if<ConditionalOnSpace>(&r)) {
        if (c->primary == c->fallback)
            throw MalformedRequirementError("conditional fallback must differ from primary");
        if (c->capacity < 1 || c->capacity > 3)
            throw MalformedRequirementError("conditional capacity must be in 1..3");
    } else if (const auto* s = std::get_if<SameShelfAs>(&r)) {
        if (s->other == owner)
            throw MalformedRequirementError("same-shelf target must be a different category");
    }
    return r;
}

std::string requirementKey(const Requirement& r) {
    std::ostringstream os;
    os << requirementTypeName(requirementType(r)) << '|';
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SpecificLoc>) {
                os << locationName(v.loc);
            } else if constexpr (std::is_same_v<T, GeneralLoc>) {
                os << generalLocationName(v.loc);
            } else if constexpr (std::is_same_v<T, TogetherSameCategory>) {
                os << '-';
            } else if constexpr (std::is_same_v<T, SameShelfAs>) {
                os << categoryName(v.other);
            } else if constexpr (std::is_same_v<T, ExceptionForAttribute>) {
                os << locationName(v.base) << '|' << v.attribute << '|'
                   << locationName(v.exceptionLoc);
            } else if constexpr (std::is_same_v<T, ConditionalOnSpace>) {
                os << locationName(v.primary) << '|' << v.capacity << '|'
                   << locationName(v.fallback);
            }
        },
        r);
    return os.str();
}

std::string describeRequirement(Category owner, const Requirement& r) {
    std::ostringstream os;
    os << categoryName(owner) << " to be placed ";
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SpecificLoc>) {
                os << "at the " << locationName(v.loc);
            } else if constexpr (std::is_same_v<T, GeneralLoc>) {
                os << "anywhere on the " << generalLocationName(v.loc);
            } else if constexpr (std::is_same_v<T, TogetherSameCategory>) {
                os << "together next to existing " << categoryName(owner)
                   << " regardless of which shelf they are on";
            } else if constexpr (std::is_same_v<T, SameShelfAs>) {
                os << "on the same shelf next to " << categoryName(v.other);
            } else if constexpr (std::is_same_v<T, ExceptionForAttribute>) {
                os << "at the " << locationName(v.base) << ", except " << v.attribute
                   << " ones at the " << locationName(v.exceptionLoc);
            } else if constexpr (std::is_same_v<T, ConditionalOnSpace>) {
                os << "at the " << locationName(v.primary) << " while it holds fewer than "
                   << v.capacity << " of them, otherwise at the " << locationName(v.fallback);
            }
        },
        r);
    return os.str();
}

Preference canonicalize(const Preference& p) {
    Preference out;
    for (const auto& [cat, req] : p.requirements)
        out.requirements.emplace(cat, canonicalize(req, cat));
    return out;
}

std::string preferenceKey(const Preference& p) {
    std::ostringstream os;
    for (const auto& [cat, req] : p.requirements)
        os << categoryName(cat) << '=' << requirementKey(req) << ';';
    return os.str();
}

std::vector<SpecificLocation> admissibleLocations(const Requirement& req,
                                                  const std::set<std::string>& objectAttributes,
                                                  const Occupancy& state, Category category) {
    return std::visit(
        [&](const auto& v) -> std::vector<SpecificLocation> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SpecificLoc>) {
                return {v.loc};
            } else if constexpr (std::is_same_v<T, GeneralLoc>) {
                return expand(v.loc);
            } else if constexpr (std::is_same_v<T, TogetherSameCategory>) {
                auto anchors = state.locationsHolding(category);
                if (anchors.empty())
                    return {kAllSpecificLocations.begin(), kAllSpecificLocations.end()};
                return anchors;
            } else if constexpr (std::is_same_v<T, SameShelfAs>) {
                auto shelves = state.shelvesHolding(v.other);
                if (shelves.empty())
                    return {kAllSpecificLocations.begin(), kAllSpecificLocations.end()};
                std::vector<SpecificLocation> out;
                for (SpecificLocation loc : kAllSpecificLocations)
                    for (Shelf s : shelves)
                        if (loc.shelf == s) out.push_back(loc);
                return out;
            } else if constexpr (std::is_same_v<T, ExceptionForAttribute>) {
                if (objectAttributes.count(v.attribute)) return {v.exceptionLoc};
                return {v.base};
            } else if constexpr (std::is_same_v<T, ConditionalOnSpace>) {
                // Counts only the owning category, against the evolving state.
                if (state.countAt(category, v.primary) < v.capacity) return {v.primary};
                return {v.fallback};
            }
        },
        req);
}

std::vector<SpecificLocation> admissibleLocations(const Requirement& req,
                                                  const std::set<std::string>& objectAttributes,
                                                  const FridgeState& state, const Catalog& catalog,
                                                  Category category) {
    return admissibleLocations(req, objectAttributes, state.occupancy(catalog), category);
}

} // namespace apricot
