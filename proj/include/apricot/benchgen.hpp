#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apricot/plan.hpp"
#include "apricot/planner.hpp"
#include "apricot/preference.hpp"
#include "apricot/rng.hpp"

namespace apricot {

enum class Family {
    SpecificLocation,
    GeneralLocation,
    RelativePosition,
    SubcategoryException,
    Conditional,
};

inline constexpr std::array<Family, 5> kAllFamilies = {
    Family::SpecificLocation, Family::GeneralLocation,   Family::RelativePosition,
    Family::SubcategoryException, Family::Conditional,
};

std::string_view familyName(Family f);
std::optional<Family> familyFromName(std::string_view name);

struct Scenario {
    FridgeState initial;            // objects already in the fridge
    std::vector<std::string> task;  // objects to put away, in order
};

struct TestCase {
    int id = 0;
    Family family = Family::SpecificLocation;
    Preference groundTruth;
    std::vector<Demonstration> demos; // exactly two
    Scenario scenario;
    std::uint64_t seed = 0;
    // Set when generation verified: demos are reward-1 consistent and the
    // planner achieves reward 1 / constraint 0 on (scenario, groundTruth),
    // so the optimal reward of the instance is exactly 1.
    bool certified = false;
};

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
    int casesPerFamily = 20;
    bool allowUnambiguous = false; // skip the >=2-consistent-candidates floor
    PlannerConfig planner;
};

// Ground truth for one family; twoSpecials picks the documented sub-variant
// (e.g. one vs two general-location categories) and is sampled when absent.
Preference generateGroundTruth(Family family, Rng& rng, const Catalog& catalog,
                               std::optional<bool> twoSpecials = std::nullopt);

// A single demonstration consistent with the ground truth (asserted via the
// reward before returning). Throws GenerationRetryError when sampling keeps
// failing geometrically.
Demonstration realizeDemonstration(const Preference& groundTruth, Rng& rng,
                                   const Catalog& catalog);

// The full benchmark: casesPerFamily cases for each requested family, every
// case certified feasible; throws GenerationRetryError when a case cannot be
// realized within the retry budget.
std::vector<TestCase> generateDataset(const GeneratorConfig& cfg, const Catalog& catalog);

// Nine fixed harder-mix cases (three sizes x three families) standing in for
// the physical-robot scenarios.
std::vector<TestCase> curatedCases(const Catalog& catalog);

nlohmann::ordered_json testCaseToJson(const TestCase& tc);
TestCase testCaseFromJson(const nlohmann::json& j, const Catalog& catalog);

// One JSON file per case plus manifest.json in `dir`.
void writeDataset(const std::vector<TestCase>& cases, const std::string& dir,
                  const GeneratorConfig& cfg);
std::vector<TestCase> loadDataset(const std::string& dir, const Catalog& catalog);

} // namespace apricot
