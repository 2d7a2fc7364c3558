#include "apricot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "apricot/errors.hpp"
#include "apricot/reward.hpp"

namespace apricot {

std::string renderQuestionText(Category category, const Requirement& asserted) {
    return "Do you prefer " + describeRequirement(category, asserted) + "?";
}

double AnswerModel::logitGap() const {
    if (eta <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log((1.0 - eta) / eta);
}

Answer deterministicAnswer(const Question& q, const Preference& theta) {
    auto it = theta.requirements.find(q.category);
    if (it == theta.requirements.end())
        throw UncoveredCategoryError("preference does not cover category "
                                     + std::string(categoryName(q.category)));
    return it->second == q.asserted ? Answer::Yes : Answer::No;
}

double likelihood(Answer observed, const Question& q, const Preference& theta,
                  const AnswerModel& model) {
    return observed == deterministicAnswer(q, theta) ? 1.0 - model.eta : model.eta;
}

Answer simulatedUser(const Question& q, const Preference& groundTruth, const AnswerModel& model,
                     Rng& rng) {
    Answer truthful = deterministicAnswer(q, groundTruth);
    if (model.eta > 0.0 && rng.bernoulli(model.eta))
        return truthful == Answer::Yes ? Answer::No : Answer::Yes;
    return truthful;
}

std::vector<Requirement> enumerateConsistentRequirements(Category category,
                                                         const std::vector<Demonstration>& demos,
                                                         const std::set<Category>& universe,
                                                         const Catalog& catalog) {
    std::vector<Requirement> grammar;
    for (SpecificLocation loc : kAllSpecificLocations) grammar.push_back(SpecificLoc{loc});
    for (GeneralLocation g : kAllGeneralLocations) grammar.push_back(GeneralLoc{g});
    grammar.push_back(TogetherSameCategory{});
    for (Category other : kAllCategories)
        if (other != category && universe.count(other)) grammar.push_back(SameShelfAs{other});
    for (const std::string& attr : catalog.attributeVocabulary(category))
        for (SpecificLocation base : kAllSpecificLocations)
            for (SpecificLocation exc : kAllSpecificLocations)
                if (base != exc) grammar.push_back(ExceptionForAttribute{base, attr, exc});
    for (int capacity = 1; capacity <= 3; ++capacity)
        for (SpecificLocation primary : kAllSpecificLocations)
            for (SpecificLocation fallback : kAllSpecificLocations)
                if (primary != fallback)
                    grammar.push_back(ConditionalOnSpace{primary, capacity, fallback});

    std::vector<Requirement> consistent;
    for (const Requirement& req : grammar)
        if (consistentWithDemosForCategory(req, category, demos, catalog))
            consistent.push_back(req);
    return consistent;
}

namespace {

// One diversity-weighted draw of a joint preference: per category, pick a
// requirement TYPE with weight 1/(1+times chosen), then a uniform member.
Preference sampleJoint(const std::map<Category, std::vector<Requirement>>& pools,
                       const std::map<Category, std::map<RequirementType, int>>& typeCounts,
                       Rng& rng) {
    Preference p;
    for (const auto& [cat, pool] : pools) {
        std::map<RequirementType, std::vector<const Requirement*>> byType;
        for (const Requirement& r : pool) byType[requirementType(r)].push_back(&r);

        double totalWeight = 0.0;
        std::vector<std::pair<RequirementType, double>> weights;
        for (const auto& [type, members] : byType) {
            int count = 0;
            if (auto itc = typeCounts.find(cat); itc != typeCounts.end())
                if (auto itt = itc->second.find(type); itt != itc->second.end())
                    count = itt->second;
            double w = 1.0 / (1.0 + count);
            weights.emplace_back(type, w);
            totalWeight += w;
        }
        double draw = rng.uniform() * totalWeight;
        RequirementType chosenType = weights.back().first;
        for (const auto& [type, w] : weights) {
            if (draw < w) {
                chosenType = type;
                break;
            }
            draw -= w;
        }
        const auto& members = byType.at(chosenType);
        p.requirements.emplace(cat, *members[rng.index(members.size())]);
    }
    return p;
}

} // namespace

ProposalResult proposeCandidates(const std::vector<Demonstration>& demos,
                                 const std::set<Category>& universe, const ProposalConfig& cfg,
                                 const Catalog& catalog) {
    std::map<Category, std::vector<Requirement>> pools;
    double logJointCount = 0.0;
    for (Category cat : universe) {
        auto pool = enumerateConsistentRequirements(cat, demos, universe, catalog);
        if (pool.empty())
            throw InsufficientCandidatesError(0, cfg.n);
        logJointCount += std::log(static_cast<double>(pool.size()));
        pools.emplace(cat, std::move(pool));
    }
    // Joint space too small to ever produce n distinct candidates?
    if (logJointCount < std::log(static_cast<double>(cfg.n)) - 1e-9)
        throw InsufficientCandidatesError(
            static_cast<int>(std::lround(std::exp(logJointCount))), cfg.n);

    Rng rng(cfg.seed);
    ProposalResult result;
    std::map<Category, std::map<RequirementType, int>> typeCounts;
    std::set<std::string> seen;

    const int maxDraws = 64 * cfg.n;
    int draws = 0;
    while (static_cast<int>(result.candidates.size()) < cfg.n && draws < maxDraws) {
        ++draws;
        Preference p = sampleJoint(pools, typeCounts, rng);
        if (!seen.insert(preferenceKey(p)).second) continue;
        for (const auto& [cat, req] : p.requirements)
            typeCounts[cat][requirementType(req)] += 1;
        result.candidates.push_back(std::move(p));
    }
    if (static_cast<int>(result.candidates.size()) < cfg.n)
        throw InsufficientCandidatesError(static_cast<int>(result.candidates.size()), cfg.n);

    if (cfg.includeGroundTruth) {
        if (!cfg.groundTruth)
            throw MalformedInputError("includeGroundTruth set without a ground truth");
        const std::string key = preferenceKey(*cfg.groundTruth);
        for (int i = 0; i < cfg.n; ++i) {
            if (preferenceKey(result.candidates[i]) == key) {
                result.groundTruthIndex = i;
                break;
            }
        }
        if (result.groundTruthIndex < 0) {
            int slot = static_cast<int>(rng.index(static_cast<std::size_t>(cfg.n)));
            result.candidates[slot] = *cfg.groundTruth;
            result.groundTruthIndex = slot;
        }
    }
    return result;
}

std::vector<Question> generateQuestions(const Preference& a, const Preference& b, int m) {
    std::vector<Question> out;
    for (const auto& [cat, reqA] : a.requirements) {
        auto it = b.requirements.find(cat);
        if (it == b.requirements.end() || !(it->second == reqA)) {
            out.push_back({cat, reqA, renderQuestionText(cat, reqA)});
            if (it != b.requirements.end())
                out.push_back({cat, it->second, renderQuestionText(cat, it->second)});
        }
    }
    for (const auto& [cat, reqB] : b.requirements)
        if (!a.requirements.count(cat))
            out.push_back({cat, reqB, renderQuestionText(cat, reqB)});
    if (out.empty()) throw IdenticalPreferenceError();
    if (static_cast<int>(out.size()) > m) out.resize(static_cast<std::size_t>(m));
    return out;
}

std::vector<Question> buildQuestionPool(const std::vector<Preference>& candidates, int m) {
    std::vector<Question> pool;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (candidates[i] == candidates[j]) continue; // padded duplicate
            for (Question& q : generateQuestions(candidates[i], candidates[j], m)) {
                std::string key = std::string(categoryName(q.category)) + '|'
                                  + requirementKey(q.asserted);
                if (seen.insert(key).second) pool.push_back(std::move(q));
            }
        }
    }
    return pool;
}

} // namespace apricot
