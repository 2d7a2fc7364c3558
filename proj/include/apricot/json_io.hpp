#pragma once

#include <json.hpp>

#include "apricot/belief.hpp"
#include "apricot/plan.hpp"
#include "apricot/preference.hpp"
#include "apricot/world.hpp"

namespace apricot {

// All document roots carry this version; loaders reject other versions.
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json requirementToJson(const Requirement& r);
Requirement requirementFromJson(const nlohmann::json& j);

Json preferenceToJson(const Preference& p);
Preference preferenceFromJson(const nlohmann::json& j);

// Emits both the shelf->side->names map (prompt style) and the placements
// array. A document with only the map gets deterministic left-packed
// coordinates synthesized on load.
Json fridgeStateToJson(const FridgeState& s);
FridgeState fridgeStateFromJson(const nlohmann::json& j, const Catalog& catalog);

Json planToJson(const Plan& p);
Plan planFromJson(const nlohmann::json& j, const Catalog& catalog);

Json demonstrationToJson(const Demonstration& d);
Demonstration demonstrationFromJson(const nlohmann::json& j, const Catalog& catalog);

Json transcriptEventToJson(const TranscriptEvent& e);
TranscriptEvent transcriptEventFromJson(const nlohmann::ordered_json& j);

void requireSchemaVersion(const nlohmann::json& j);

} // namespace apricot
