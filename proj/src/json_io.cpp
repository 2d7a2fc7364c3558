#include "apricot/json_io.hpp"

#include "apricot/errors.hpp"

namespace apricot {

void requireSchemaVersion(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schemaVersion"))
        throw MalformedInputError("document lacks schemaVersion");
    if (j.at("schemaVersion").get<int>() != kSchemaVersion)
        throw MalformedInputError("unsupported schemaVersion");
}

Json requirementToJson(const Requirement& r) {
    Json j;
    j["type"] = requirementTypeName(requirementType(r));
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SpecificLoc>) {
                j["location"] = locationName(v.loc);
            } else if constexpr (std::is_same_v<T, GeneralLoc>) {
                j["location"] = generalLocationName(v.loc);
            } else if constexpr (std::is_same_v<T, TogetherSameCategory>) {
                // tag only
            } else if constexpr (std::is_same_v<T, SameShelfAs>) {
                j["other"] = categoryName(v.other);
            } else if constexpr (std::is_same_v<T, ExceptionForAttribute>) {
                j["base"] = locationName(v.base);
                j["attribute"] = v.attribute;
                j["exception"] = locationName(v.exceptionLoc);
            } else if constexpr (std::is_same_v<T, ConditionalOnSpace>) {
                j["primary"] = locationName(v.primary);
                j["capacity"] = v.capacity;
                j["fallback"] = locationName(v.fallback);
            }
        },
        r);
    return j;
}

namespace {

SpecificLocation locationOrThrow(const nlohmann::json& j, const char* key) {
    auto loc = locationFromName(j.at(key).get<std::string>());
    if (!loc) throw MalformedInputError(std::string("bad location in field ") + key);
    return *loc;
}

} // namespace

Requirement requirementFromJson(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "specific-location") return SpecificLoc{locationOrThrow(j, "location")};
    if (type == "general-location") {
        auto g = generalLocationFromName(j.at("location").get<std::string>());
        if (!g) throw MalformedInputError("bad general location");
        return GeneralLoc{*g};
    }
    if (type == "together-same-category") return TogetherSameCategory{};
    if (type == "same-shelf-as") {
        auto c = categoryFromName(j.at("other").get<std::string>());
        if (!c) throw MalformedInputError("bad category in same-shelf-as");
        return SameShelfAs{*c};
    }
    if (type == "exception-for-attribute")
        return ExceptionForAttribute{locationOrThrow(j, "base"),
                                     j.at("attribute").get<std::string>(),
                                     locationOrThrow(j, "exception")};
    if (type == "conditional-on-space")
        return ConditionalOnSpace{locationOrThrow(j, "primary"), j.at("capacity").get<int>(),
                                  locationOrThrow(j, "fallback")};
    throw MalformedInputError("unknown requirement type: " + type);
}

Json preferenceToJson(const Preference& p) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    Json reqs;
    for (const auto& [cat, req] : p.requirements)
        reqs[std::string(categoryName(cat))] = requirementToJson(req);
    j["requirements"] = std::move(reqs);
    return j;
}

Preference preferenceFromJson(const nlohmann::json& j) {
    requireSchemaVersion(j);
    Preference p;
    for (const auto& [key, value] : j.at("requirements").items()) {
        auto cat = categoryFromName(key);
        if (!cat) throw MalformedInputError("unknown category: " + key);
        p.requirements.emplace(*cat, requirementFromJson(value));
    }
    return canonicalize(p);
}

Json fridgeStateToJson(const FridgeState& s) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["geometry"] = {{"shelfWidth", s.geometry().shelfWidth},
                     {"clearance", s.geometry().clearance}};
    Json view;
    auto semantic = s.semanticView();
    for (Shelf shelf : {Shelf::Top, Shelf::Middle, Shelf::Bottom}) {
        Json row;
        for (Side side : {Side::Left, Side::Right}) {
            SpecificLocation loc{shelf, side};
            row[locationName(loc)] = semantic.at(loc);
        }
        view[std::string(shelfName(shelf)) + " shelf"] = std::move(row);
    }
    j["state"] = std::move(view);
    Json placements = Json::array();
    for (const Placement& p : s.placements()) {
        Json row;
        row["object"] = p.object;
        row["shelf"] = shelfName(p.shelf);
        row["x"] = p.x;
        placements.push_back(std::move(row));
    }
    j["placements"] = std::move(placements);
    return j;
}

FridgeState fridgeStateFromJson(const nlohmann::json& j, const Catalog& catalog) {
    requireSchemaVersion(j);
    FridgeGeometry g;
    if (j.contains("geometry")) {
        g.shelfWidth = j.at("geometry").at("shelfWidth").get<double>();
        g.clearance = j.at("geometry").at("clearance").get<double>();
    }
    FridgeState state(g);
    if (j.contains("placements") && !j.at("placements").empty()) {
        for (const auto& row : j.at("placements")) {
            auto shelf = shelfFromName(row.at("shelf").get<std::string>());
            if (!shelf) throw MalformedInputError("bad shelf in placement");
            state = state.applied({row.at("object").get<std::string>(), *shelf,
                                   row.at("x").get<double>()},
                                  catalog);
        }
        return state;
    }
    if (!j.contains("state")) return state;
    // Semantic-only form: left-pack each region deterministically.
    for (Shelf shelf : {Shelf::Top, Shelf::Middle, Shelf::Bottom}) {
        const std::string key = std::string(shelfName(shelf)) + " shelf";
        if (!j.at("state").contains(key)) continue;
        const auto& row = j.at("state").at(key);
        for (Side side : {Side::Left, Side::Right}) {
            SpecificLocation loc{shelf, side};
            if (!row.contains(locationName(loc))) continue;
            double cursor = side == Side::Left ? 0.0 : g.sideBoundary();
            for (const auto& nameJson : row.at(locationName(loc))) {
                const std::string name = nameJson.get<std::string>();
                const double w = catalog.lookup(name).widthCm;
                Placement p{name, shelf, cursor + w / 2.0};
                if (semanticLocation(p, g) != loc)
                    throw MalformedInputError("region overflow while packing " + name);
                state = state.applied(p, catalog); // throws CollisionError when over-full
                cursor = p.x + w / 2.0 + g.clearance;
            }
        }
    }
    return state;
}

Json planToJson(const Plan& p) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["initialState"] = fridgeStateToJson(p.initialState);
    Json actions = Json::array();
    for (const PlanAction& a : p.actions) {
        Json row;
        row["object"] = a.object;
        row["target"] = locationName(a.target);
        if (a.x)
            row["x"] = *a.x;
        else
            row["x"] = nullptr;
        actions.push_back(std::move(row));
    }
    j["actions"] = std::move(actions);
    j["sacrificed"] = p.sacrificed;
    return j;
}

Plan planFromJson(const nlohmann::json& j, const Catalog& catalog) {
    requireSchemaVersion(j);
    Plan p;
    p.initialState = fridgeStateFromJson(j.at("initialState"), catalog);
    for (const auto& row : j.at("actions")) {
        PlanAction a;
        a.object = row.at("object").get<std::string>();
        auto loc = locationFromName(row.at("target").get<std::string>());
        if (!loc) throw MalformedInputError("bad action target");
        a.target = *loc;
        if (row.contains("x") && !row.at("x").is_null()) a.x = row.at("x").get<double>();
        p.actions.push_back(std::move(a));
    }
    if (j.contains("sacrificed"))
        p.sacrificed = j.at("sacrificed").get<std::vector<std::string>>();
    return p;
}

Json demonstrationToJson(const Demonstration& d) {
    Json j;
    j["before"] = fridgeStateToJson(d.before);
    j["after"] = fridgeStateToJson(d.after);
    j["putAway"] = d.putAway;
    return j;
}

Demonstration demonstrationFromJson(const nlohmann::json& j, const Catalog& catalog) {
    Demonstration d;
    d.before = fridgeStateFromJson(j.at("before"), catalog);
    d.after = fridgeStateFromJson(j.at("after"), catalog);
    d.putAway = j.at("putAway").get<std::vector<std::string>>();
    for (const Placement& p : d.before.placements())
        if (!d.after.find(p.object))
            throw MalformedInputError("demonstration dropped object " + p.object);
    return d;
}

Json transcriptEventToJson(const TranscriptEvent& e) {
    Json j;
    j["type"] = e.type;
    j["payload"] = e.payload;
    return j;
}

TranscriptEvent transcriptEventFromJson(const nlohmann::ordered_json& j) {
    TranscriptEvent e;
    e.type = j.at("type").get<std::string>();
    e.payload = j.at("payload");
    return e;
}

} // namespace apricot
