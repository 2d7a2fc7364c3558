#include "apricot/world.hpp"

#include <algorithm>

#include "apricot/errors.hpp"

namespace apricot {

SpecificLocation semanticLocation(const Placement& p, const FridgeGeometry& g) {
    return {p.shelf, p.x < g.sideBoundary() ? Side::Left : Side::Right};
}

void Occupancy::add(const std::string& object, Category category, SpecificLocation loc) {
    slots_[static_cast<std::size_t>(locationIndex(loc))].push_back({object, category});
}

int Occupancy::countAt(Category c, SpecificLocation loc) const {
    const auto& entries = slots_[static_cast<std::size_t>(locationIndex(loc))];
    int n = 0;
    for (const Entry& e : entries)
        if (e.category == c) ++n;
    return n;
}

std::vector<SpecificLocation> Occupancy::locationsHolding(Category c) const {
    std::vector<SpecificLocation> out;
    for (SpecificLocation loc : kAllSpecificLocations)
        if (countAt(c, loc) > 0) out.push_back(loc);
    return out;
}

std::vector<Shelf> Occupancy::shelvesHolding(Category c) const {
    std::vector<Shelf> out;
    for (Shelf s : {Shelf::Top, Shelf::Middle, Shelf::Bottom}) {
        bool holds = countAt(c, {s, Side::Left}) > 0 || countAt(c, {s, Side::Right}) > 0;
        if (holds) out.push_back(s);
    }
    return out;
}

const std::vector<Occupancy::Entry>& Occupancy::at(SpecificLocation loc) const {
    return slots_[static_cast<std::size_t>(locationIndex(loc))];
}

const Placement* FridgeState::find(const std::string& object) const {
    for (const Placement& p : placements_)
        if (p.object == object) return &p;
    return nullptr;
}

bool FridgeState::collides(const Placement& candidate, const Catalog& catalog) const {
    const double w = catalog.lookup(candidate.object).widthCm;
    const double lo = candidate.x - w / 2.0;
    const double hi = candidate.x + w / 2.0;
    if (lo < 0.0 || hi > geometry_.shelfWidth) return true;

    // Candidate interval grows by the clearance; occupied intervals stay raw.
    // Touching at a single point is fine (gap exactly equal to clearance).
    const double cLo = lo - geometry_.clearance;
    const double cHi = hi + geometry_.clearance;
    for (const Placement& p : placements_) {
        if (p.shelf != candidate.shelf || p.object == candidate.object) continue;
        const double pw = catalog.lookup(p.object).widthCm;
        const double pLo = p.x - pw / 2.0;
        const double pHi = p.x + pw / 2.0;
        if (cLo < pHi && pLo < cHi) return true;
    }
    return false;
}

FridgeState FridgeState::applied(const Placement& p, const Catalog& catalog) const {
    if (find(p.object))
        throw CollisionError("object already in fridge: " + p.object);
    if (collides(p, catalog))
        throw CollisionError("placement collides: " + p.object + " at "
                             + locationName(semanticLocation(p, geometry_)));
    FridgeState next = *this;
    next.placements_.push_back(p);
    return next;
}

FridgeState FridgeState::removed(const std::string& object) const {
    FridgeState next(geometry_);
    for (const Placement& p : placements_)
        if (p.object != object) next.placements_.push_back(p);
    return next;
}

std::map<SpecificLocation, std::vector<std::string>> FridgeState::semanticView() const {
    std::map<SpecificLocation, std::vector<std::string>> view;
    for (SpecificLocation loc : kAllSpecificLocations) view[loc] = {};
    std::vector<Placement> sorted = placements_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Placement& a, const Placement& b) { return a.x < b.x; });
    for (const Placement& p : sorted)
        view[semanticLocation(p, geometry_)].push_back(p.object);
    return view;
}

Occupancy FridgeState::occupancy(const Catalog& catalog) const {
    Occupancy occ;
    std::vector<Placement> sorted = placements_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Placement& a, const Placement& b) { return a.x < b.x; });
    for (const Placement& p : sorted)
        occ.add(p.object, catalog.lookup(p.object).category, semanticLocation(p, geometry_));
    return occ;
}

std::vector<std::pair<double, double>>
FridgeState::freeCenterIntervals(SpecificLocation loc, double width,
                                 const Catalog& catalog) const {
    const double half = width / 2.0;
    const double boundary = geometry_.sideBoundary();
    // Valid center range: inside the region and fully on the shelf. The
    // boundary itself belongs to the right side, so the left side is open
    // at the boundary; we shave an epsilon so sampled centers classify
    // correctly.
    double lo = loc.side == Side::Left ? half : std::max(boundary, half);
    double hi = loc.side == Side::Left ? std::min(boundary - 1e-9, geometry_.shelfWidth - half)
                                       : geometry_.shelfWidth - half;
    if (hi < lo) return {};

    std::vector<std::pair<double, double>> free = {{lo, hi}};
    for (const Placement& p : placements_) {
        if (p.shelf != loc.shelf) continue;
        const double pw = catalog.lookup(p.object).widthCm;
        // Centers closer than this to p.x would violate the clearance.
        const double forbid = (pw + width) / 2.0 + geometry_.clearance;
        const double fLo = p.x - forbid;
        const double fHi = p.x + forbid;
        std::vector<std::pair<double, double>> next;
        for (auto [a, b] : free) {
            if (fHi <= a || fLo >= b) {
                next.emplace_back(a, b);
                continue;
            }
            if (fLo > a) next.emplace_back(a, fLo);
            if (fHi < b) next.emplace_back(fHi, b);
        }
        free = std::move(next);
    }
    return free;
}

} // namespace apricot
