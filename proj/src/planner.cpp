#include "apricot/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apricot/errors.hpp"

namespace apricot {

namespace {

const Requirement& requirementFor(const Preference& theta, Category cat) {
    auto it = theta.requirements.find(cat);
    if (it == theta.requirements.end())
        throw UncoveredCategoryError("preference does not cover category "
                                     + std::string(categoryName(cat)));
    return it->second;
}

// Sum over shelves of the largest contiguous free gap; beams that keep big
// gaps leave more room for the objects still to come.
double freeSpaceScore(const FridgeState& state, const Catalog& catalog) {
    double total = 0.0;
    for (Shelf shelf : {Shelf::Top, Shelf::Middle, Shelf::Bottom}) {
        std::vector<std::pair<double, double>> spans;
        for (const Placement& p : state.placements()) {
            if (p.shelf != shelf) continue;
            const double w = catalog.lookup(p.object).widthCm;
            spans.emplace_back(p.x - w / 2.0, p.x + w / 2.0);
        }
        std::sort(spans.begin(), spans.end());
        double cursor = 0.0;
        double best = 0.0;
        for (auto [lo, hi] : spans) {
            best = std::max(best, lo - cursor);
            cursor = std::max(cursor, hi);
        }
        best = std::max(best, state.geometry().shelfWidth - cursor);
        total += best;
    }
    return total;
}

struct Beam {
    FridgeState state;
    std::vector<PlanAction> actions;
    int placed = 0;
    int satisfied = 0;
    double freeSpace = 0.0;

    // Lexicographic rank, then coordinates as the final deterministic
    // tie-break so the search is a pure function of its inputs.
    bool betterThan(const Beam& o) const {
        if (placed != o.placed) return placed > o.placed;
        if (satisfied != o.satisfied) return satisfied > o.satisfied;
        if (freeSpace != o.freeSpace) return freeSpace > o.freeSpace;
        for (std::size_t i = 0; i < actions.size() && i < o.actions.size(); ++i) {
            const double a = actions[i].x.value_or(-1.0);
            const double b = o.actions[i].x.value_or(-1.0);
            if (a != b) return a < b;
        }
        return false;
    }
};

} // namespace

std::vector<SemanticStep> semanticPlan(const FridgeState& s0, const std::vector<std::string>& task,
                                       const Preference& theta, const ExclusionMap& excluded,
                                       const Catalog& catalog) {
    std::vector<SemanticStep> steps;
    Occupancy occ = s0.occupancy(catalog);
    for (const std::string& object : task) {
        const ObjectSpec& spec = catalog.lookup(object);
        const Requirement& req = requirementFor(theta, spec.category);
        auto admissible = admissibleLocations(req, spec.attributes, occ, spec.category);

        const std::set<SpecificLocation>* banned = nullptr;
        if (auto it = excluded.find(object); it != excluded.end()) banned = &it->second;

        SemanticStep step;
        step.object = object;
        bool found = false;
        for (SpecificLocation loc : admissible) {
            if (banned && banned->count(loc)) continue;
            step.target = loc;
            found = true;
            break;
        }
        if (!found) {
            // Give up on the preference for this object: least-occupied
            // non-excluded region, ties resolved canonically.
            int bestCount = std::numeric_limits<int>::max();
            for (SpecificLocation loc : kAllSpecificLocations) {
                if (banned && banned->count(loc)) continue;
                int count = static_cast<int>(occ.at(loc).size());
                if (count < bestCount) {
                    bestCount = count;
                    step.target = loc;
                }
            }
            step.preferenceSacrificed = true;
        }
        steps.push_back(step);
        occ.add(object, spec.category, step.target);
    }
    return steps;
}

std::pair<Plan, std::optional<Feedback>> beamSearch(const FridgeState& s0,
                                                    const std::vector<SemanticStep>& semantic,
                                                    const Preference& theta,
                                                    const PlannerConfig& cfg,
                                                    const Catalog& catalog) {
    std::vector<Beam> beams;
    beams.push_back({s0, {}, 0, 0, freeSpaceScore(s0, catalog)});

    const double boundary = s0.geometry().sideBoundary();
    const double shelfWidth = s0.geometry().shelfWidth;

    for (const SemanticStep& step : semantic) {
        const double regionLo = step.target.side == Side::Left ? 0.0 : boundary;
        const double regionHi = step.target.side == Side::Left ? boundary : shelfWidth;
        const int k = std::max(1, cfg.samplesPerRegion);

        std::vector<Beam> next;
        for (const Beam& beam : beams) {
            const bool ok = satisfies(step.object, step.target, theta,
                                      beam.state.occupancy(catalog), catalog);
            for (int i = 0; i < k; ++i) {
                const double x = regionLo + (i + 0.5) * (regionHi - regionLo) / k;
                Placement p{step.object, step.target.shelf, x};
                if (beam.state.collides(p, catalog)) continue;
                Beam child = beam;
                child.state = child.state.applied(p, catalog);
                child.actions.push_back({step.object, step.target, x});
                child.placed += 1;
                child.satisfied += ok ? 1 : 0;
                child.freeSpace = freeSpaceScore(child.state, catalog);
                next.push_back(std::move(child));
            }
            // Always keep the continuation where the object stays unplaced;
            // ranked below anything that placed it.
            Beam skip = beam;
            skip.actions.push_back({step.object, step.target, std::nullopt});
            next.push_back(std::move(skip));
        }
        std::sort(next.begin(), next.end(),
                  [](const Beam& a, const Beam& b) { return a.betterThan(b); });
        if (static_cast<int>(next.size()) > cfg.beamWidth) next.resize(cfg.beamWidth);
        beams = std::move(next);
    }

    const Beam& best = beams.front();
    Plan plan;
    plan.initialState = s0;
    plan.actions = best.actions;
    for (const SemanticStep& step : semantic)
        if (step.preferenceSacrificed) plan.sacrificed.push_back(step.object);

    std::optional<Feedback> feedback;
    std::vector<std::string> unplaced;
    for (const PlanAction& a : plan.actions)
        if (!a.x) unplaced.push_back(a.object);
    if (!unplaced.empty()) feedback = Feedback{unplaced, 0};
    return {plan, feedback};
}

PlanResult planWithRefinement(const FridgeState& s0, const std::vector<std::string>& task,
                              const Preference& theta, const PlannerConfig& cfg,
                              const Catalog& catalog) {
    PlanResult result;
    ExclusionMap excluded;
    bool haveBest = false;
    std::size_t bestPlaced = 0;
    double bestReward = -1.0;

    for (int attempt = 1; attempt <= std::max(1, cfg.maxRefinements); ++attempt) {
        RefinementAttempt rec;
        rec.attempt = attempt;
        rec.semantic = semanticPlan(s0, task, theta, excluded, catalog);
        auto [plan, feedback] = beamSearch(s0, rec.semantic, theta, cfg, catalog);
        if (feedback) feedback->attempt = attempt;
        rec.plan = plan;
        rec.feedback = feedback;
        result.trace.push_back(rec);

        const std::size_t placed = plan.placedCount();
        const double r = reward(plan, theta, catalog);
        if (!haveBest || placed > bestPlaced || (placed == bestPlaced && r > bestReward)) {
            haveBest = true;
            bestPlaced = placed;
            bestReward = r;
            result.plan = plan;
        }
        if (!feedback) break;
        // Reflect: never send a failed object to the same location again.
        for (const std::string& object : feedback->infeasibleObjects)
            for (const SemanticStep& step : rec.semantic)
                if (step.object == object) excluded[object].insert(step.target);
    }
    return result;
}

namespace {

struct OracleSearch {
    const FridgeState* s0;
    const Preference* theta;
    const Catalog* catalog;
    double gridStep;
    std::size_t n;

    std::vector<const ObjectSpec*> specs;
    std::vector<bool> used;

    bool haveBest = false;
    int bestSatisfied = -1;
    std::size_t bestPlaced = 0;
    std::vector<PlanAction> bestActions;

    // Smallest grid multiple inside a free center interval of the region.
    std::optional<double> leftmostGridCenter(const FridgeState& state, const ObjectSpec& spec,
                                             SpecificLocation loc) const {
        auto free = state.freeCenterIntervals(loc, spec.widthCm, *catalog);
        for (auto [a, b] : free) {
            const double c = std::ceil((a - 1e-9) / gridStep) * gridStep;
            if (c <= b + 1e-9) return std::min(c, b);
        }
        return std::nullopt;
    }

    void dfs(std::size_t step, const FridgeState& state, const Occupancy& occ, int satisfied,
             std::vector<PlanAction>& actions) {
        if (haveBest && bestPlaced == n
            && satisfied + static_cast<int>(n - step) <= bestSatisfied)
            return;
        if (step == n) {
            if (!haveBest || actions.size() > bestPlaced
                || (actions.size() == bestPlaced && satisfied > bestSatisfied)) {
                haveBest = true;
                bestPlaced = actions.size();
                bestSatisfied = satisfied;
                bestActions = actions;
            }
            return;
        }
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (used[i]) continue;
            // Objects with identical category/attributes/width are
            // interchangeable here; keep only the first unused one.
            bool duplicate = false;
            for (std::size_t j = 0; j < i && !duplicate; ++j)
                duplicate = !used[j] && specs[j]->category == specs[i]->category
                            && specs[j]->attributes == specs[i]->attributes
                            && specs[j]->widthCm == specs[i]->widthCm;
            if (duplicate) continue;

            const ObjectSpec& spec = *specs[i];
            auto admissible =
                admissibleLocations(requirementFor(*theta, spec.category), spec.attributes, occ,
                                    spec.category);
            std::vector<std::pair<SpecificLocation, bool>> options;
            for (SpecificLocation loc : admissible) options.emplace_back(loc, true);
            for (SpecificLocation loc : kAllSpecificLocations)
                if (std::find(admissible.begin(), admissible.end(), loc) == admissible.end())
                    options.emplace_back(loc, false);

            for (auto [loc, ok] : options) {
                auto center = leftmostGridCenter(state, spec, loc);
                if (!center) continue;
                used[i] = true;
                actions.push_back({spec.name, loc, *center});
                Occupancy childOcc = occ;
                childOcc.add(spec.name, spec.category, loc);
                dfs(step + 1, state.applied({spec.name, loc.shelf, *center}, *catalog), childOcc,
                    satisfied + (ok ? 1 : 0), actions);
                actions.pop_back();
                used[i] = false;
            }
        }
        // Partial fallback: only relevant when no complete placement exists.
        if (!haveBest || actions.size() > bestPlaced
            || (actions.size() == bestPlaced && satisfied > bestSatisfied)) {
            haveBest = true;
            bestPlaced = actions.size();
            bestSatisfied = satisfied;
            bestActions = actions;
        }
    }
};

} // namespace

Plan bruteForceOptimal(const FridgeState& s0, const std::vector<std::string>& task,
                       const Preference& theta, const Catalog& catalog, double gridStep) {
    if (task.size() > 5) throw IntractableInstanceError(task.size());

    OracleSearch search;
    search.s0 = &s0;
    search.theta = &theta;
    search.catalog = &catalog;
    search.gridStep = gridStep;
    search.n = task.size();
    for (const std::string& object : task) search.specs.push_back(&catalog.lookup(object));
    search.used.assign(task.size(), false);

    std::vector<PlanAction> actions;
    search.dfs(0, s0, s0.occupancy(catalog), 0, actions);

    Plan plan;
    plan.initialState = s0;
    plan.actions = search.bestActions;
    return plan;
}

} // namespace apricot
