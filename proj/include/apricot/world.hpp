#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apricot/catalog.hpp"

namespace apricot {

struct FridgeGeometry {
    double shelfWidth = 60.0; // cm, per shelf
    double clearance = 1.0;   // required free gap between objects

    double sideBoundary() const { return shelfWidth / 2.0; }

    friend bool operator==(const FridgeGeometry&, const FridgeGeometry&) = default;
};

// An object standing on a shelf; x is the bounding-box center.
struct Placement {
    std::string object;
    Shelf shelf = Shelf::Top;
    double x = 0.0;

    friend bool operator==(const Placement&, const Placement&) = default;
};

// Center exactly on the side boundary counts as the right side.
SpecificLocation semanticLocation(const Placement& p, const FridgeGeometry& g);

// Category-level view of who stands where. This is all the preference
// semantics ever look at; geometry stays in FridgeState.
class Occupancy {
  public:
    struct Entry {
        std::string object;
        Category category;
    };

    void add(const std::string& object, Category category, SpecificLocation loc);

    int countAt(Category c, SpecificLocation loc) const;
    // Locations holding at least one object of c, canonical order.
    std::vector<SpecificLocation> locationsHolding(Category c) const;
    // Shelves holding at least one object of c.
    std::vector<Shelf> shelvesHolding(Category c) const;
    const std::vector<Entry>& at(SpecificLocation loc) const;

  private:
    std::array<std::vector<Entry>, 6> slots_;
};

class FridgeState {
  public:
    FridgeState() = default;
    explicit FridgeState(FridgeGeometry g) : geometry_(g) {}

    const FridgeGeometry& geometry() const { return geometry_; }
    const std::vector<Placement>& placements() const { return placements_; }
    const Placement* find(const std::string& object) const;

    // True when the candidate, expanded by the clearance on both sides,
    // overlaps an existing same-shelf object or leaves the shelf bounds.
    bool collides(const Placement& candidate, const Catalog& catalog) const;

    // Value-semantics update; throws CollisionError when collides() is true
    // or the object is already present.
    FridgeState applied(const Placement& p, const Catalog& catalog) const;
    FridgeState removed(const std::string& object) const;

    // Placements projected onto their semantic locations, each list ordered
    // by x. Locations with no objects are present with empty lists.
    std::map<SpecificLocation, std::vector<std::string>> semanticView() const;
    Occupancy occupancy(const Catalog& catalog) const;

    // Free sub-intervals of valid centers for a width-w object restricted to
    // one semantic region; used by samplers and by the planners.
    std::vector<std::pair<double, double>>
    freeCenterIntervals(SpecificLocation loc, double width, const Catalog& catalog) const;

    void addUnchecked(const Placement& p) { placements_.push_back(p); }

  private:
    FridgeGeometry geometry_;
    std::vector<Placement> placements_;
};

} // namespace apricot
