#include "apricot/benchgen.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "apricot/errors.hpp"
#include "apricot/json_io.hpp"
#include "apricot/oracle.hpp"
#include "apricot/reward.hpp"

namespace apricot {

namespace fs = std::filesystem;

std::string_view familyName(Family f) {
    switch (f) {
        case Family::SpecificLocation: return "specific-location";
        case Family::GeneralLocation: return "general-location";
        case Family::RelativePosition: return "relative-position";
        case Family::SubcategoryException: return "subcategory-exception";
        case Family::Conditional: return "conditional";
    }
    throw std::logic_error("bad family");
}

std::optional<Family> familyFromName(std::string_view name) {
    for (Family f : kAllFamilies)
        if (familyName(f) == name) return f;
    return std::nullopt;
}

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.index(i)]);
}

SpecificLocation randomLocation(Rng& rng) {
    return kAllSpecificLocations[rng.index(kAllSpecificLocations.size())];
}

SpecificLocation randomLocationExcept(Rng& rng, SpecificLocation avoid) {
    while (true) {
        SpecificLocation loc = randomLocation(rng);
        if (loc != avoid) return loc;
    }
}

// Uniform center over the free sub-intervals of a region; nullopt when the
// region cannot take the object.
std::optional<double> sampleCenter(const FridgeState& state, SpecificLocation loc, double width,
                                   const Catalog& catalog, Rng& rng) {
    auto free = state.freeCenterIntervals(loc, width, catalog);
    double total = 0.0;
    for (auto [a, b] : free) total += b - a;
    if (free.empty()) return std::nullopt;
    if (total <= 1e-9) return free.front().first; // single-point slot
    double u = rng.uniform() * total;
    for (auto [a, b] : free) {
        if (u <= b - a) return a + u;
        u -= b - a;
    }
    return free.back().second;
}

// Picks an unused object of the category; `attribute` filters on carrying
// (wantAttribute) or explicitly not carrying it.
std::optional<std::string> pickObject(const Catalog& catalog, Category cat,
                                      std::set<std::string>& used, Rng& rng,
                                      const std::string& attribute = "",
                                      bool wantAttribute = false) {
    std::vector<const ObjectSpec*> pool;
    for (const ObjectSpec* o : catalog.objectsIn(cat)) {
        if (used.count(o->name)) continue;
        if (!attribute.empty() && (o->attributes.count(attribute) > 0) != wantAttribute) continue;
        pool.push_back(o);
    }
    if (pool.empty()) return std::nullopt;
    const ObjectSpec* chosen = pool[rng.index(pool.size())];
    used.insert(chosen->name);
    return chosen->name;
}

// Places an object at a uniformly chosen admissible location (uniform member
// pick, then uniform coordinate within the free space). Returns false when
// no admissible region has room.
bool placeAdmissibly(FridgeState& state, const std::string& object, const Preference& theta,
                     const Catalog& catalog, Rng& rng,
                     std::optional<SpecificLocation> forced = std::nullopt) {
    const ObjectSpec& spec = catalog.lookup(object);
    std::vector<SpecificLocation> options;
    if (forced) {
        options = {*forced};
    } else {
        options = admissibleLocations(theta.requirements.at(spec.category), spec.attributes,
                                      state.occupancy(catalog), spec.category);
        shuffle(options, rng);
    }
    for (SpecificLocation loc : options) {
        auto x = sampleCenter(state, loc, spec.widthCm, catalog, rng);
        if (!x) continue;
        state = state.applied({object, loc.shelf, *x}, catalog);
        return true;
    }
    return false;
}

// A conditional whose fallback precedes its primary in canonical location
// order cannot demonstrate the capacity crossing: the demo-to-plan
// conversion reorders actions canonically and would judge the fallback
// placement while the primary still has room.
bool orderFragile(const Requirement& req) {
    if (const auto* c = std::get_if<ConditionalOnSpace>(&req))
        return locationIndex(c->fallback) < locationIndex(c->primary);
    return false;
}

// Anchor/preseed placements that must exist before anything is put away:
// one anchor per Together category, capacity-1 objects at the primary of
// each (order-robust) conditional category.
bool seedInitialState(FridgeState& state, const Preference& gt, const Catalog& catalog,
                      std::set<std::string>& used, int maxSeeds, Rng& rng) {
    int seeds = 0;
    for (const auto& [cat, req] : gt.requirements) {
        if (std::holds_alternative<TogetherSameCategory>(req)) {
            if (seeds >= maxSeeds) return false;
            auto name = pickObject(catalog, cat, used, rng);
            if (!name || !placeAdmissibly(state, *name, gt, catalog, rng)) return false;
            ++seeds;
        } else if (const auto* c = std::get_if<ConditionalOnSpace>(&req)) {
            if (orderFragile(req)) continue;
            int preseed = std::min(c->capacity - 1, maxSeeds - seeds);
            for (int i = 0; i < preseed; ++i) {
                auto name = pickObject(catalog, cat, used, rng);
                if (!name || !placeAdmissibly(state, *name, gt, catalog, rng, c->primary))
                    return false;
                ++seeds;
            }
        }
    }
    return true;
}

// Non-special categories, used to fill context slots without disturbing
// anchors or capacity counts.
std::vector<Category> fillerCategories(const Preference& gt) {
    std::vector<Category> fillers;
    for (Category c : kAllCategories)
        if (requirementType(gt.requirements.at(c)) == RequirementType::SpecificLoc)
            fillers.push_back(c);
    if (fillers.empty()) fillers.assign(kAllCategories.begin(), kAllCategories.end());
    return fillers;
}

struct Blueprint {
    int demoInitial = 3;
    int demoPlaced = 4;
    int scenarioInitial = 4;
    int scenarioTask = 6;
};

struct SpecialCategory {
    Category category;
    RequirementType type;
};

std::vector<SpecialCategory> specialsOf(const Preference& p) {
    std::vector<SpecialCategory> out;
    for (const auto& [cat, req] : p.requirements)
        if (requirementType(req) != RequirementType::SpecificLoc)
            out.push_back({cat, requirementType(req)});
    return out;
}

class CaseBuilder {
  public:
    CaseBuilder(const Catalog& catalog, const PlannerConfig& planner)
        : catalog_(catalog), planner_(planner) {}

    std::optional<TestCase> tryBuild(int id, Family family, std::uint64_t caseSeed,
                                     std::optional<bool> twoSpecials, const Blueprint& bp,
                                     bool enforceAmbiguity) const {
        Rng rng(caseSeed);
        Preference gt = generateGroundTruth(family, rng, catalog_, twoSpecials);
        auto specials = specialsOf(gt);

        // Demo A leads with the special categories; demo B covers everything
        // demo A missed, then revisits sturdy specials.
        std::vector<Category> demoACats = demoCategories(gt, specials, rng, bp.demoPlaced);
        std::vector<Category> demoBCats;
        for (Category c : kAllCategories)
            if (std::find(demoACats.begin(), demoACats.end(), c) == demoACats.end())
                demoBCats.push_back(c);
        if (static_cast<int>(demoBCats.size()) > bp.demoPlaced) return std::nullopt;
        std::vector<Category> sturdy;
        for (const SpecialCategory& s : specials)
            if (!orderFragile(gt.requirements.at(s.category))) sturdy.push_back(s.category);
        if (sturdy.empty()) sturdy = fillerCategories(gt);
        while (static_cast<int>(demoBCats.size()) < bp.demoPlaced)
            demoBCats.push_back(sturdy[rng.index(sturdy.size())]);

        TestCase tc;
        tc.id = id;
        tc.family = family;
        tc.groundTruth = gt;
        tc.seed = caseSeed;
        for (const auto& cats : {demoACats, demoBCats}) {
            auto demo = buildDemo(gt, cats, bp, rng);
            if (!demo) return std::nullopt;
            tc.demos.push_back(std::move(*demo));
        }
        if (!consistentWithDemos(gt, tc.demos, catalog_)) return std::nullopt;

        auto scenario = buildScenario(gt, specials, bp, rng);
        if (!scenario) return std::nullopt;
        tc.scenario = std::move(*scenario);

        // Feasibility certificate: the planner itself must fully realize the
        // ground truth on this scenario.
        PlanResult planned =
            planWithRefinement(tc.scenario.initial, tc.scenario.task, gt, planner_, catalog_);
        if (planned.plan.placedCount() != tc.scenario.task.size()) return std::nullopt;
        if (constraint(tc.scenario.initial, planned.plan, catalog_).violated != 0)
            return std::nullopt;
        if (reward(planned.plan, gt, catalog_) < 1.0) return std::nullopt;

        if (enforceAmbiguity && !isAmbiguous(gt, tc.demos)) return std::nullopt;
        tc.certified = true;
        return tc;
    }

  private:
    std::vector<Category> demoCategories(const Preference& gt,
                                         const std::vector<SpecialCategory>& specials, Rng& rng,
                                         int slots) const {
        std::vector<Category> cats;
        for (const SpecialCategory& s : specials) {
            int copies = orderFragile(gt.requirements.at(s.category)) ? 1 : 2;
            for (int i = 0; i < copies && static_cast<int>(cats.size()) < slots; ++i)
                cats.push_back(s.category);
        }
        std::vector<Category> rest;
        for (Category c : kAllCategories)
            if (std::find(cats.begin(), cats.end(), c) == cats.end()) rest.push_back(c);
        shuffle(rest, rng);
        for (Category c : rest)
            if (static_cast<int>(cats.size()) < slots) cats.push_back(c);
        return cats;
    }

    std::optional<Demonstration> buildDemo(const Preference& gt,
                                           const std::vector<Category>& placedCats,
                                           const Blueprint& bp, Rng& rng) const {
        for (int attempt = 0; attempt < 30; ++attempt) {
            std::set<std::string> used;
            FridgeState before;
            if (!seedInitialState(before, gt, catalog_, used, bp.demoInitial, rng)) continue;

            auto fillers = fillerCategories(gt);
            bool ok = true;
            while (ok && static_cast<int>(before.placements().size()) < bp.demoInitial) {
                Category cat = fillers[rng.index(fillers.size())];
                auto name = pickObject(catalog_, cat, used, rng);
                ok = name && placeAdmissibly(before, *name, gt, catalog_, rng);
            }
            if (!ok) continue;

            Demonstration demo;
            demo.before = before;
            FridgeState after = before;
            for (Category cat : placedCats) {
                std::optional<std::string> name;
                if (const auto* e =
                        std::get_if<ExceptionForAttribute>(&gt.requirements.at(cat))) {
                    // Alternate attribute-bearing and plain objects so both
                    // branches of the exception appear in the demo.
                    bool haveAttr = std::any_of(
                        demo.putAway.begin(), demo.putAway.end(), [&](const std::string& n) {
                            const ObjectSpec& s = catalog_.lookup(n);
                            return s.category == cat && s.attributes.count(e->attribute) > 0;
                        });
                    name = pickObject(catalog_, cat, used, rng, e->attribute, !haveAttr);
                    if (!name) name = pickObject(catalog_, cat, used, rng);
                } else {
                    name = pickObject(catalog_, cat, used, rng);
                }
                if (!name || !placeAdmissibly(after, *name, gt, catalog_, rng)) {
                    ok = false;
                    break;
                }
                demo.putAway.push_back(*name);
            }
            if (!ok) continue;
            demo.after = after;
            if (!consistentWithDemos(gt, {demo}, catalog_)) continue;
            return demo;
        }
        return std::nullopt;
    }

    std::optional<Scenario> buildScenario(const Preference& gt,
                                          const std::vector<SpecialCategory>& specials,
                                          const Blueprint& bp, Rng& rng) const {
        for (int attempt = 0; attempt < 30; ++attempt) {
            std::set<std::string> used;
            Scenario sc;
            sc.initial = FridgeState{};
            if (!seedInitialState(sc.initial, gt, catalog_, used, bp.scenarioInitial, rng))
                continue;
            auto fillers = fillerCategories(gt);
            bool ok = true;
            while (ok && static_cast<int>(sc.initial.placements().size()) < bp.scenarioInitial) {
                Category cat = fillers[rng.index(fillers.size())];
                auto name = pickObject(catalog_, cat, used, rng);
                ok = name && placeAdmissibly(sc.initial, *name, gt, catalog_, rng);
            }
            if (!ok) continue;

            // Task: two objects per special category (for the exception
            // family one carrying the attribute and one not), random
            // coverage for the rest, at most two per filler category.
            std::vector<std::string> task;
            std::map<Category, int> taskCount;
            for (const SpecialCategory& s : specials) {
                if (static_cast<int>(task.size()) + 2 > bp.scenarioTask) break;
                if (const auto* e =
                        std::get_if<ExceptionForAttribute>(&gt.requirements.at(s.category))) {
                    auto a = pickObject(catalog_, s.category, used, rng, e->attribute, true);
                    auto b = pickObject(catalog_, s.category, used, rng, e->attribute, false);
                    if (!a || !b) {
                        ok = false;
                        break;
                    }
                    task.push_back(*a);
                    task.push_back(*b);
                } else {
                    for (int i = 0; i < 2 && ok; ++i) {
                        auto name = pickObject(catalog_, s.category, used, rng);
                        if (!name)
                            ok = false;
                        else
                            task.push_back(*name);
                    }
                }
                taskCount[s.category] = 2;
            }
            if (!ok) continue;
            int guard = 0;
            while (static_cast<int>(task.size()) < bp.scenarioTask && guard++ < 200) {
                Category cat = kAllCategories[rng.index(kAllCategories.size())];
                if (taskCount[cat] >= 2) continue;
                auto name = pickObject(catalog_, cat, used, rng);
                if (!name) continue;
                task.push_back(*name);
                taskCount[cat] += 1;
            }
            if (static_cast<int>(task.size()) < bp.scenarioTask) continue;
            shuffle(task, rng);
            sc.task = std::move(task);
            return sc;
        }
        return std::nullopt;
    }

    // At least two distinct demo-consistent joint preferences must exist
    // (and the ground truth must be among them).
    bool isAmbiguous(const Preference& gt, const std::vector<Demonstration>& demos) const {
        std::set<Category> universe(kAllCategories.begin(), kAllCategories.end());
        bool multiple = false;
        for (Category c : kAllCategories) {
            auto pool = enumerateConsistentRequirements(c, demos, universe, catalog_);
            bool gtPresent = false;
            for (const Requirement& r : pool)
                if (r == gt.requirements.at(c)) gtPresent = true;
            if (!gtPresent) return false;
            if (pool.size() >= 2) multiple = true;
        }
        return multiple;
    }

    const Catalog& catalog_;
    PlannerConfig planner_;
};

} // namespace

Preference generateGroundTruth(Family family, Rng& rng, const Catalog& catalog,
                               std::optional<bool> twoSpecials) {
    bool two = twoSpecials ? *twoSpecials : rng.bernoulli(0.5);

    // Distinct home locations per category keep single regions from
    // overfilling when every category is location-pinned.
    std::vector<SpecificLocation> homes(kAllSpecificLocations.begin(),
                                        kAllSpecificLocations.end());
    shuffle(homes, rng);
    std::vector<Category> order(kAllCategories.begin(), kAllCategories.end());
    shuffle(order, rng);

    Preference p;
    for (std::size_t i = 0; i < order.size(); ++i)
        p.requirements.emplace(order[i], SpecificLoc{homes[i]});

    const int specialCount = family == Family::SpecificLocation ? 0 : (two ? 2 : 1);
    for (int s = 0; s < specialCount; ++s) {
        Category cat = order[static_cast<std::size_t>(s)];
        SpecificLocation home = homes[static_cast<std::size_t>(s)];
        switch (family) {
            case Family::SpecificLocation: break;
            case Family::GeneralLocation:
                p.requirements.at(cat) =
                    GeneralLoc{kAllGeneralLocations[rng.index(kAllGeneralLocations.size())]};
                break;
            case Family::RelativePosition:
                if (s == 0 || rng.bernoulli(0.5))
                    p.requirements.at(cat) = TogetherSameCategory{};
                else
                    p.requirements.at(cat) = SameShelfAs{order[0]};
                break;
            case Family::SubcategoryException: {
                const auto& vocab = catalog.attributeVocabulary(cat);
                p.requirements.at(cat) = ExceptionForAttribute{
                    home, vocab[rng.index(vocab.size())], randomLocationExcept(rng, home)};
                break;
            }
            case Family::Conditional:
                p.requirements.at(cat) = ConditionalOnSpace{
                    home, 1 + static_cast<int>(rng.index(3)), randomLocationExcept(rng, home)};
                break;
        }
    }
    return canonicalize(p);
}

Demonstration realizeDemonstration(const Preference& groundTruth, Rng& rng,
                                   const Catalog& catalog) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::set<std::string> used;
        FridgeState before;
        if (!seedInitialState(before, groundTruth, catalog, used, 3, rng)) continue;
        auto fillers = fillerCategories(groundTruth);
        bool ok = true;
        while (ok && before.placements().size() < 3) {
            Category cat = fillers[rng.index(fillers.size())];
            auto name = pickObject(catalog, cat, used, rng);
            ok = name && placeAdmissibly(before, *name, groundTruth, catalog, rng);
        }
        if (!ok) continue;

        Demonstration demo;
        demo.before = before;
        FridgeState after = before;
        for (int i = 0; i < 4 && ok; ++i) {
            Category cat = kAllCategories[rng.index(kAllCategories.size())];
            auto name = pickObject(catalog, cat, used, rng);
            ok = name && placeAdmissibly(after, *name, groundTruth, catalog, rng);
            if (ok) demo.putAway.push_back(*name);
        }
        if (!ok) continue;
        demo.after = after;
        if (consistentWithDemos(groundTruth, {demo}, catalog)) return demo;
    }
    throw GenerationRetryError("realization-retry-exhausted: demonstration");
}

std::vector<TestCase> generateDataset(const GeneratorConfig& cfg, const Catalog& catalog) {
    CaseBuilder builder(catalog, cfg.planner);
    std::vector<TestCase> cases;
    int id = 0;
    for (Family family : cfg.families) {
        for (int k = 0; k < cfg.casesPerFamily; ++k, ++id) {
            // Documented sub-variant split: first half of each family gets
            // one special category, second half two.
            std::optional<bool> two;
            if (family != Family::SpecificLocation) two = k >= cfg.casesPerFamily / 2;

            bool built = false;
            for (int attempt = 0; attempt < 100 && !built; ++attempt) {
                std::uint64_t caseSeed =
                    deriveSeed(cfg.seed, static_cast<std::uint64_t>(id) * 1000
                                             + static_cast<std::uint64_t>(attempt));
                auto tc = builder.tryBuild(id, family, caseSeed, two, Blueprint{},
                                           !cfg.allowUnambiguous);
                if (tc) {
                    cases.push_back(std::move(*tc));
                    built = true;
                }
            }
            if (!built)
                throw GenerationRetryError("generation-retry-exhausted: case "
                                           + std::to_string(id) + " ("
                                           + std::string(familyName(family)) + ")");
        }
    }
    return cases;
}

std::vector<TestCase> curatedCases(const Catalog& catalog) {
    struct Tier {
        Blueprint bp;
        Family family;
        std::uint64_t seed;
    };
    // Three sizes, three preference styles each; the hard tier matches the
    // largest physical setup (six objects in the fridge, five to put away).
    const Tier tiers[] = {
        {{2, 3, 2, 3}, Family::SpecificLocation, 11},
        {{2, 3, 2, 3}, Family::GeneralLocation, 12},
        {{2, 3, 2, 3}, Family::RelativePosition, 13},
        {{3, 4, 4, 4}, Family::SubcategoryException, 21},
        {{3, 4, 4, 4}, Family::Conditional, 22},
        {{3, 4, 4, 4}, Family::SpecificLocation, 23},
        {{3, 4, 6, 5}, Family::GeneralLocation, 31},
        {{3, 4, 6, 5}, Family::RelativePosition, 32},
        {{3, 4, 6, 5}, Family::Conditional, 33},
    };
    CaseBuilder builder(catalog, PlannerConfig{});
    std::vector<TestCase> cases;
    int id = 1000;
    for (const Tier& tier : tiers) {
        bool built = false;
        for (int attempt = 0; attempt < 300 && !built; ++attempt) {
            auto tc = builder.tryBuild(id, tier.family,
                                       deriveSeed(tier.seed, static_cast<std::uint64_t>(attempt)),
                                       false, tier.bp, true);
            if (tc) {
                cases.push_back(std::move(*tc));
                built = true;
            }
        }
        if (!built)
            throw GenerationRetryError("generation-retry-exhausted: curated case "
                                       + std::to_string(id));
        ++id;
    }
    return cases;
}

nlohmann::ordered_json testCaseToJson(const TestCase& tc) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["id"] = tc.id;
    j["family"] = familyName(tc.family);
    j["seed"] = tc.seed;
    j["certified"] = tc.certified;
    j["groundTruth"] = preferenceToJson(tc.groundTruth);
    Json demos = Json::array();
    for (const Demonstration& d : tc.demos) demos.push_back(demonstrationToJson(d));
    j["demos"] = std::move(demos);
    j["scenario"] = Json{{"initial", fridgeStateToJson(tc.scenario.initial)},
                         {"task", tc.scenario.task}};
    return j;
}

TestCase testCaseFromJson(const nlohmann::json& j, const Catalog& catalog) {
    requireSchemaVersion(j);
    TestCase tc;
    tc.id = j.at("id").get<int>();
    auto fam = familyFromName(j.at("family").get<std::string>());
    if (!fam) throw MalformedInputError("unknown family");
    tc.family = *fam;
    tc.seed = j.at("seed").get<std::uint64_t>();
    tc.certified = j.value("certified", false);
    tc.groundTruth = preferenceFromJson(j.at("groundTruth"));
    for (const auto& d : j.at("demos")) tc.demos.push_back(demonstrationFromJson(d, catalog));
    tc.scenario.initial = fridgeStateFromJson(j.at("scenario").at("initial"), catalog);
    tc.scenario.task = j.at("scenario").at("task").get<std::vector<std::string>>();
    return tc;
}

void writeDataset(const std::vector<TestCase>& cases, const std::string& dir,
                  const GeneratorConfig& cfg) {
    fs::create_directories(dir);
    Json manifest;
    manifest["schemaVersion"] = kSchemaVersion;
    manifest["seed"] = cfg.seed;
    Json list = Json::array();
    for (const TestCase& tc : cases) {
        char name[32];
        std::snprintf(name, sizeof(name), "case-%03d.json", tc.id);
        std::ofstream out(fs::path(dir) / name);
        out << testCaseToJson(tc).dump(2) << '\n';
        Json row;
        row["id"] = tc.id;
        row["family"] = familyName(tc.family);
        row["file"] = name;
        list.push_back(std::move(row));
    }
    manifest["cases"] = std::move(list);
    std::ofstream out(fs::path(dir) / "manifest.json");
    out << manifest.dump(2) << '\n';
}

std::vector<TestCase> loadDataset(const std::string& dir, const Catalog& catalog) {
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw MalformedInputError("no manifest.json in " + dir);
    nlohmann::json manifest;
    in >> manifest;
    requireSchemaVersion(manifest);
    std::vector<TestCase> cases;
    for (const auto& row : manifest.at("cases")) {
        std::ifstream caseIn(fs::path(dir) / row.at("file").get<std::string>());
        if (!caseIn)
            throw MalformedInputError("missing case file " + row.at("file").get<std::string>());
        nlohmann::json j;
        caseIn >> j;
        cases.push_back(testCaseFromJson(j, catalog));
    }
    return cases;
}

} // namespace apricot
