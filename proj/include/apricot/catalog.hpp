#pragma once

#include <array>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace apricot {

// The five object categories, in canonical order. All per-category maps and
// serialized forms iterate in this order.
enum class Category {
    Fruits,
    Vegetables,
    Condiments,
    DairyProducts,
    JuiceAndSoftDrinks,
};

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::Fruits,
    Category::Vegetables,
    Category::Condiments,
    Category::DairyProducts,
    Category::JuiceAndSoftDrinks,
};

std::string_view categoryName(Category c);
std::optional<Category> categoryFromName(std::string_view name);

enum class Shelf { Top, Middle, Bottom };
enum class Side { Left, Right };

std::string_view shelfName(Shelf s);
std::string_view sideName(Side s);
std::optional<Shelf> shelfFromName(std::string_view name);
std::optional<Side> sideFromName(std::string_view name);

// One of the six placeable regions ("left side of top shelf", ...).
struct SpecificLocation {
    Shelf shelf;
    Side side;

    friend auto operator<=>(const SpecificLocation&, const SpecificLocation&) = default;
};

// Canonical order: top-left, top-right, middle-left, middle-right,
// bottom-left, bottom-right.
inline constexpr std::array<SpecificLocation, 6> kAllSpecificLocations = {{
    {Shelf::Top, Side::Left},
    {Shelf::Top, Side::Right},
    {Shelf::Middle, Side::Left},
    {Shelf::Middle, Side::Right},
    {Shelf::Bottom, Side::Left},
    {Shelf::Bottom, Side::Right},
}};

int locationIndex(SpecificLocation loc);
std::string locationName(SpecificLocation loc); // "left side of top shelf"
std::optional<SpecificLocation> locationFromName(std::string_view name);

enum class GeneralLocation {
    LeftSideOfFridge,
    RightSideOfFridge,
    TopShelf,
    MiddleShelf,
    BottomShelf,
};

inline constexpr std::array<GeneralLocation, 5> kAllGeneralLocations = {
    GeneralLocation::LeftSideOfFridge,
    GeneralLocation::RightSideOfFridge,
    GeneralLocation::TopShelf,
    GeneralLocation::MiddleShelf,
    GeneralLocation::BottomShelf,
};

std::string generalLocationName(GeneralLocation g); // "left side of fridge"
std::optional<GeneralLocation> generalLocationFromName(std::string_view name);

// Member specific locations of a general location, in canonical order.
std::vector<SpecificLocation> expand(GeneralLocation g);
bool generalContains(GeneralLocation g, SpecificLocation loc);

struct ObjectSpec {
    std::string name;
    Category category;
    std::set<std::string> attributes; // subset of the category's vocabulary
    double widthCm = 0.0;
};

// Fixed universe of objects the whole pipeline draws from. The built-in
// catalog ships in code; an alternate one can be loaded from JSON.
class Catalog {
  public:
    static const Catalog& builtin();
    static Catalog fromJson(const nlohmann::json& j);
    static Catalog load(const std::string& path);

    nlohmann::ordered_json toJson() const;

    // Throws UnknownObjectError.
    const ObjectSpec& lookup(const std::string& name) const;
    const ObjectSpec* find(const std::string& name) const;

    const std::vector<ObjectSpec>& objects() const { return objects_; }
    std::vector<const ObjectSpec*> objectsIn(Category c) const;
    const std::vector<std::string>& attributeVocabulary(Category c) const;

  private:
    Catalog() = default;
    void validate() const;

    std::vector<ObjectSpec> objects_;
    std::array<std::vector<std::string>, 5> vocab_;
};

} // namespace apricot
