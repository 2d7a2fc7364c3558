#include "apricot/belief.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "apricot/errors.hpp"
#include "apricot/reward.hpp"

namespace apricot {

double entropy(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

double disadvantage(int planIdx, int prefIdx, const BeliefState& belief) {
    const auto& row = belief.rewardMatrix[static_cast<std::size_t>(prefIdx)];
    double best = *std::max_element(row.begin(), row.end());
    return best - row[static_cast<std::size_t>(planIdx)];
}

double expectedDisadvantage(int planIdx, const BeliefState& belief) {
    double total = 0.0;
    for (std::size_t i = 0; i < belief.probs.size(); ++i)
        total += belief.probs[i] * disadvantage(planIdx, static_cast<int>(i), belief);
    return total;
}

int bestPlanIndex(const BeliefState& belief) {
    int best = 0;
    double bestValue = expectedDisadvantage(0, belief);
    for (int j = 1; j < static_cast<int>(belief.candidates.size()); ++j) {
        double value = expectedDisadvantage(j, belief);
        if (value < bestValue) {
            bestValue = value;
            best = j;
        }
    }
    return best;
}

std::optional<int> shouldTerminate(const BeliefState& belief, double epsilon) {
    int best = bestPlanIndex(belief);
    if (expectedDisadvantage(best, belief) <= epsilon) return best;
    return std::nullopt;
}

double expectedInfoGain(const Question& q, const BeliefState& belief, const AnswerModel& model) {
    double gain = entropy(belief.probs);
    for (Answer o : {Answer::Yes, Answer::No}) {
        double pObs = 0.0;
        std::vector<double> posterior(belief.probs.size(), 0.0);
        for (std::size_t i = 0; i < belief.candidates.size(); ++i) {
            double lik = likelihood(o, q, belief.candidates[i], model);
            posterior[i] = belief.probs[i] * lik;
            pObs += posterior[i];
        }
        if (pObs <= 0.0) continue;
        for (double& p : posterior) p /= pObs;
        gain -= pObs * entropy(posterior);
    }
    return gain;
}

int selectQuestion(const std::vector<Question>& pool, const BeliefState& belief,
                   const AnswerModel& model) {
    if (pool.empty()) throw EmptyQuestionSetError();
    int best = 0;
    double bestGain = expectedInfoGain(pool[0], belief, model);
    for (int i = 1; i < static_cast<int>(pool.size()); ++i) {
        double gain = expectedInfoGain(pool[static_cast<std::size_t>(i)], belief, model);
        if (gain > bestGain) {
            bestGain = gain;
            best = i;
        }
    }
    return best;
}

BeliefState posteriorUpdate(const BeliefState& belief, const Question& q, Answer observed,
                            const AnswerModel& model) {
    BeliefState next = belief;
    double total = 0.0;
    for (std::size_t i = 0; i < next.probs.size(); ++i) {
        double mass = next.probs[i] * likelihood(observed, q, next.candidates[i], model);
        if (model.eta > 0.0) mass = std::max(mass, 1e-12);
        next.probs[i] = mass;
        total += mass;
    }
    if (total <= 0.0) throw DegeneratePosteriorError();
    for (double& p : next.probs) p /= total;
    next.askedQuestions.push_back(q);
    return next;
}

namespace {

nlohmann::ordered_json posteriorJson(const std::vector<double>& probs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double p : probs) arr.push_back(p);
    return arr;
}

} // namespace

ActiveLearningResult runActiveLearning(const FridgeState& s0, const std::vector<std::string>& task,
                                       const std::vector<Demonstration>& demos,
                                       const LearnerConfig& learnerCfg,
                                       const PlannerConfig& plannerCfg,
                                       const ProposalConfig& proposalCfg, const UserFn& user,
                                       const Catalog& catalog, const EventSink& sink) {
    ActiveLearningResult result;
    auto emit = [&](std::string type, nlohmann::ordered_json payload) {
        TranscriptEvent ev{std::move(type), std::move(payload)};
        if (sink) sink(ev);
        result.transcript.push_back(std::move(ev));
    };

    std::set<Category> universe;
    for (const std::string& object : task) universe.insert(catalog.lookup(object).category);
    for (const Demonstration& demo : demos)
        for (const Placement& p : demo.after.placements())
            universe.insert(catalog.lookup(p.object).category);

    result.proposal = proposeCandidates(demos, universe, proposalCfg, catalog);

    BeliefState belief;
    belief.candidates = result.proposal.candidates;
    const std::size_t n = belief.candidates.size();
    belief.probs.assign(n, 1.0 / static_cast<double>(n));
    for (const Preference& theta : belief.candidates)
        belief.planLibrary.push_back(planWithRefinement(s0, task, theta, plannerCfg, catalog).plan);
    belief.rewardMatrix.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            belief.rewardMatrix[i][j] = reward(belief.planLibrary[j], belief.candidates[i], catalog);

    std::vector<Question> pool =
        buildQuestionPool(belief.candidates, learnerCfg.questionsPerPair);

    {
        nlohmann::ordered_json payload;
        payload["candidateCount"] = n;
        payload["poolSize"] = pool.size();
        payload["padded"] = result.proposal.padded;
        nlohmann::ordered_json keys = nlohmann::ordered_json::array();
        for (const Preference& c : belief.candidates) keys.push_back(preferenceKey(c));
        payload["candidates"] = std::move(keys);
        payload["prior"] = posteriorJson(belief.probs);
        emit("propose", std::move(payload));
    }

    AnswerModel model{learnerCfg.answerNoiseEta};
    Rng policyRng(learnerCfg.policySeed);
    while (true) {
        if (auto done = shouldTerminate(belief, learnerCfg.epsilon)) {
            result.chosenIndex = *done;
            result.forcedTermination = false;
            break;
        }
        if (pool.empty() || result.queryCount >= learnerCfg.maxQuestions) {
            result.chosenIndex = bestPlanIndex(belief);
            result.forcedTermination = true;
            break;
        }
        int qi = learnerCfg.policy == QuestionPolicy::RandomUnasked
                     ? static_cast<int>(policyRng.index(pool.size()))
                     : selectQuestion(pool, belief, model);
        Question q = pool[static_cast<std::size_t>(qi)];
        pool.erase(pool.begin() + qi);

        {
            nlohmann::ordered_json payload;
            payload["category"] = categoryName(q.category);
            payload["requirement"] = requirementKey(q.asserted);
            payload["text"] = q.text;
            emit("question", std::move(payload));
        }
        Answer a = user(q);
        {
            nlohmann::ordered_json payload;
            payload["answer"] = answerName(a);
            emit("answer", std::move(payload));
        }
        belief = posteriorUpdate(belief, q, a, model);
        result.queryCount += 1;
        {
            nlohmann::ordered_json payload;
            payload["posterior"] = posteriorJson(belief.probs);
            emit("update", std::move(payload));
        }
    }

    result.expectedDisadvantageAtStop = expectedDisadvantage(result.chosenIndex, belief);
    result.chosenPlan = belief.planLibrary[static_cast<std::size_t>(result.chosenIndex)];
    result.chosenPreference = belief.candidates[static_cast<std::size_t>(result.chosenIndex)];
    result.finalBelief = belief;
    {
        nlohmann::ordered_json payload;
        payload["chosenIndex"] = result.chosenIndex;
        payload["expectedDisadvantage"] = result.expectedDisadvantageAtStop;
        payload["forced"] = result.forcedTermination;
        payload["queryCount"] = result.queryCount;
        emit("terminate", std::move(payload));
    }
    return result;
}

} // namespace apricot
