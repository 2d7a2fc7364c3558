#include "apricot/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "apricot/errors.hpp"

namespace apricot {

std::string_view categoryName(Category c) {
    switch (c) {
        case Category::Fruits: return "fruits";
        case Category::Vegetables: return "vegetables";
        case Category::Condiments: return "condiments";
        case Category::DairyProducts: return "dairy-products";
        case Category::JuiceAndSoftDrinks: return "juice-and-soft-drinks";
    }
    throw std::logic_error("bad category");
}

std::optional<Category> categoryFromName(std::string_view name) {
    for (Category c : kAllCategories)
        if (categoryName(c) == name) return c;
    return std::nullopt;
}

std::string_view shelfName(Shelf s) {
    switch (s) {
        case Shelf::Top: return "top";
        case Shelf::Middle: return "middle";
        case Shelf::Bottom: return "bottom";
    }
    throw std::logic_error("bad shelf");
}

std::string_view sideName(Side s) {
    return s == Side::Left ? "left" : "right";
}

std::optional<Shelf> shelfFromName(std::string_view name) {
    if (name == "top") return Shelf::Top;
    if (name == "middle") return Shelf::Middle;
    if (name == "bottom") return Shelf::Bottom;
    return std::nullopt;
}

std::optional<Side> sideFromName(std::string_view name) {
    if (name == "left") return Side::Left;
    if (name == "right") return Side::Right;
    return std::nullopt;
}

int locationIndex(SpecificLocation loc) {
    return static_cast<int>(loc.shelf) * 2 + static_cast<int>(loc.side);
}

std::string locationName(SpecificLocation loc) {
    return std::string(sideName(loc.side)) + " side of " + std::string(shelfName(loc.shelf))
           + " shelf";
}

std::optional<SpecificLocation> locationFromName(std::string_view name) {
    for (SpecificLocation loc : kAllSpecificLocations)
        if (locationName(loc) == name) return loc;
    return std::nullopt;
}

std::string generalLocationName(GeneralLocation g) {
    switch (g) {
        case GeneralLocation::LeftSideOfFridge: return "left side of fridge";
        case GeneralLocation::RightSideOfFridge: return "right side of fridge";
        case GeneralLocation::TopShelf: return "top shelf";
        case GeneralLocation::MiddleShelf: return "middle shelf";
        case GeneralLocation::BottomShelf: return "bottom shelf";
    }
    throw std::logic_error("bad general location");
}

std::optional<GeneralLocation> generalLocationFromName(std::string_view name) {
    for (GeneralLocation g : kAllGeneralLocations)
        if (generalLocationName(g) == name) return g;
    return std::nullopt;
}

std::vector<SpecificLocation> expand(GeneralLocation g) {
    std::vector<SpecificLocation> out;
    for (SpecificLocation loc : kAllSpecificLocations)
        if (generalContains(g, loc)) out.push_back(loc);
    return out;
}

bool generalContains(GeneralLocation g, SpecificLocation loc) {
    switch (g) {
        case GeneralLocation::LeftSideOfFridge: return loc.side == Side::Left;
        case GeneralLocation::RightSideOfFridge: return loc.side == Side::Right;
        case GeneralLocation::TopShelf: return loc.shelf == Shelf::Top;
        case GeneralLocation::MiddleShelf: return loc.shelf == Shelf::Middle;
        case GeneralLocation::BottomShelf: return loc.shelf == Shelf::Bottom;
    }
    throw std::logic_error("bad general location");
}

namespace {

Catalog buildBuiltin() {
    struct Row {
        const char* name;
        Category cat;
        std::set<std::string> attrs;
        double width;
    };
    // Widths are bounding-box widths in cm, drawn from {6, 8, 10, 12, 15}
    // so a 30 cm half-shelf holds two to four objects with 1 cm clearance.
    const Row rows[] = {
        {"apple", Category::Fruits, {}, 8},
        {"orange", Category::Fruits, {}, 8},
        {"peach", Category::Fruits, {}, 6},
        {"banana", Category::Fruits, {}, 10},
        {"cherries", Category::Fruits, {"small"}, 6},
        {"grapes", Category::Fruits, {"small"}, 8},
        {"lemon", Category::Fruits, {"small"}, 6},
        {"watermelon", Category::Fruits, {"big"}, 15},
        {"pineapple", Category::Fruits, {"big"}, 12},
        {"melon", Category::Fruits, {"big"}, 12},

        {"carrot", Category::Vegetables, {"root"}, 6},
        {"potato", Category::Vegetables, {"root"}, 8},
        {"onion", Category::Vegetables, {"root"}, 8},
        {"cucumber", Category::Vegetables, {}, 8},
        {"corn", Category::Vegetables, {}, 10},
        {"bell-pepper", Category::Vegetables, {}, 8},
        {"tomato", Category::Vegetables, {}, 6},
        {"spinach", Category::Vegetables, {"leafy"}, 8},
        {"lettuce", Category::Vegetables, {"leafy"}, 12},
        {"cabbage", Category::Vegetables, {"leafy"}, 12},

        {"ketchup", Category::Condiments, {}, 6},
        {"mayonnaise", Category::Condiments, {}, 8},
        {"soy-sauce", Category::Condiments, {}, 6},
        {"bbq-sauce", Category::Condiments, {}, 8},
        {"mustard", Category::Condiments, {"spicy"}, 6},
        {"hot-sauce", Category::Condiments, {"spicy"}, 6},
        {"sriracha", Category::Condiments, {"spicy"}, 6},
        {"relish", Category::Condiments, {"sweet"}, 6},
        {"honey", Category::Condiments, {"sweet"}, 8},
        {"jam", Category::Condiments, {"sweet"}, 8},

        {"whole-milk", Category::DairyProducts, {"milk"}, 8},
        {"oat-milk", Category::DairyProducts, {"milk"}, 8},
        {"skim-milk", Category::DairyProducts, {"milk"}, 8},
        {"cheese", Category::DairyProducts, {"cheese"}, 10},
        {"cheddar", Category::DairyProducts, {"cheese"}, 10},
        {"cream-cheese", Category::DairyProducts, {"cheese"}, 8},
        {"yogurt", Category::DairyProducts, {}, 8},
        {"butter", Category::DairyProducts, {}, 6},
        {"sour-cream", Category::DairyProducts, {}, 8},
        {"whipped-cream", Category::DairyProducts, {}, 8},

        {"orange-juice", Category::JuiceAndSoftDrinks, {"juice"}, 8},
        {"apple-juice", Category::JuiceAndSoftDrinks, {"juice"}, 8},
        {"grape-juice", Category::JuiceAndSoftDrinks, {"juice"}, 8},
        {"lemonade", Category::JuiceAndSoftDrinks, {"juice"}, 8},
        {"coke", Category::JuiceAndSoftDrinks, {"soft-drink"}, 6},
        {"sprite", Category::JuiceAndSoftDrinks, {"soft-drink"}, 6},
        {"root-beer", Category::JuiceAndSoftDrinks, {"soft-drink"}, 6},
        {"soda-water", Category::JuiceAndSoftDrinks, {"soft-drink"}, 6},
        {"iced-tea", Category::JuiceAndSoftDrinks, {}, 8},
        {"energy-drink", Category::JuiceAndSoftDrinks, {}, 6},
    };

    nlohmann::json j;
    j["schemaVersion"] = 1;
    j["attributeVocabulary"] = {
        {"fruits", {"big", "small"}},
        {"vegetables", {"leafy", "root"}},
        {"condiments", {"sweet", "spicy"}},
        {"dairy-products", {"milk", "cheese"}},
        {"juice-and-soft-drinks", {"juice", "soft-drink"}},
    };
    auto& objs = j["objects"];
    objs = nlohmann::json::array();
    for (const Row& r : rows) {
        nlohmann::json o;
        o["name"] = r.name;
        o["category"] = categoryName(r.cat);
        o["attributes"] = r.attrs;
        o["widthCm"] = r.width;
        objs.push_back(std::move(o));
    }
    return Catalog::fromJson(j);
}

} // namespace

const Catalog& Catalog::builtin() {
    static const Catalog instance = buildBuiltin();
    return instance;
}

Catalog Catalog::fromJson(const nlohmann::json& j) {
    Catalog cat;
    if (!j.contains("objects") || !j.contains("attributeVocabulary"))
        throw MalformedInputError("catalog JSON needs 'objects' and 'attributeVocabulary'");
    for (Category c : kAllCategories) {
        const auto key = std::string(categoryName(c));
        const auto& v = j.at("attributeVocabulary").at(key);
        cat.vocab_[static_cast<std::size_t>(c)] = v.get<std::vector<std::string>>();
    }
    for (const auto& o : j.at("objects")) {
        ObjectSpec spec;
        spec.name = o.at("name").get<std::string>();
        auto c = categoryFromName(o.at("category").get<std::string>());
        if (!c) throw MalformedInputError("unknown category for object " + spec.name);
        spec.category = *c;
        spec.attributes = o.at("attributes").get<std::set<std::string>>();
        spec.widthCm = o.at("widthCm").get<double>();
        cat.objects_.push_back(std::move(spec));
    }
    cat.validate();
    return cat;
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInputError("cannot open catalog file: " + path);
    nlohmann::json j;
    in >> j;
    return fromJson(j);
}

nlohmann::ordered_json Catalog::toJson() const {
    nlohmann::ordered_json j;
    j["schemaVersion"] = 1;
    auto& vocab = j["attributeVocabulary"];
    for (Category c : kAllCategories)
        vocab[std::string(categoryName(c))] = vocab_[static_cast<std::size_t>(c)];
    auto& objs = j["objects"];
    objs = nlohmann::ordered_json::array();
    for (const ObjectSpec& o : objects_) {
        nlohmann::ordered_json row;
        row["name"] = o.name;
        row["category"] = categoryName(o.category);
        row["attributes"] = o.attributes;
        row["widthCm"] = o.widthCm;
        objs.push_back(std::move(row));
    }
    return j;
}

void Catalog::validate() const {
    for (const ObjectSpec& o : objects_) {
        if (o.widthCm <= 0)
            throw MalformedInputError("object " + o.name + " has non-positive width");
        const auto& vocab = attributeVocabulary(o.category);
        for (const std::string& a : o.attributes)
            if (std::find(vocab.begin(), vocab.end(), a) == vocab.end())
                throw MalformedInputError("object " + o.name + " carries attribute '" + a
                                          + "' outside its category vocabulary");
        std::size_t dupes = 0;
        for (const ObjectSpec& other : objects_)
            if (other.name == o.name) ++dupes;
        if (dupes != 1) throw MalformedInputError("duplicate object name: " + o.name);
    }
}

const ObjectSpec& Catalog::lookup(const std::string& name) const {
    if (const ObjectSpec* o = find(name)) return *o;
    throw UnknownObjectError(name);
}

const ObjectSpec* Catalog::find(const std::string& name) const {
    for (const ObjectSpec& o : objects_)
        if (o.name == name) return &o;
    return nullptr;
}

std::vector<const ObjectSpec*> Catalog::objectsIn(Category c) const {
    std::vector<const ObjectSpec*> out;
    for (const ObjectSpec& o : objects_)
        if (o.category == c) out.push_back(&o);
    return out;
}

const std::vector<std::string>& Catalog::attributeVocabulary(Category c) const {
    return vocab_[static_cast<std::size_t>(c)];
}

} // namespace apricot
