#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apricot/oracle.hpp"
#include "apricot/plan.hpp"
#include "apricot/planner.hpp"
#include "apricot/preference.hpp"

namespace apricot {

enum class QuestionPolicy {
    InfoGain,     // argmax expected information gain
    RandomUnasked // uniform over the remaining pool (baseline)
};

struct LearnerConfig {
    int candidateCount = 5;    // N
    int questionsPerPair = 2;  // M
    double epsilon = 0.07;     // termination threshold
    double answerNoiseEta = 0.1;
    int maxQuestions = 20;     // M * C(N,2) with the defaults
    QuestionPolicy policy = QuestionPolicy::InfoGain;
    std::uint64_t policySeed = 1; // only RandomUnasked draws from it
};

struct BeliefState {
    std::vector<Preference> candidates;
    std::vector<double> probs;
    std::vector<Plan> planLibrary;
    // rewardMatrix[i][j] = reward of plan j under candidate preference i.
    std::vector<std::vector<double>> rewardMatrix;
    std::vector<Question> askedQuestions;
};

// Shannon entropy in nats; 0 * ln 0 = 0.
double entropy(const std::vector<double>& probs);

// Best foregone reward: max_k R[i][k] - R[i][j].
double disadvantage(int planIdx, int prefIdx, const BeliefState& belief);

double expectedDisadvantage(int planIdx, const BeliefState& belief);

// Index of a plan whose expected disadvantage is <= epsilon, lowest expected
// disadvantage first (ties: lowest index); nullopt when none qualifies.
std::optional<int> shouldTerminate(const BeliefState& belief, double epsilon);

// Lowest-expected-disadvantage plan regardless of the threshold (used when
// the question budget or pool runs out).
int bestPlanIndex(const BeliefState& belief);

// Prior entropy minus expected posterior entropy, observations weighted by
// their predictive probability P(o|q) = sum_i P(theta_i) P(o|q,theta_i).
double expectedInfoGain(const Question& q, const BeliefState& belief, const AnswerModel& model);

// Argmax info gain over the pool; ties keep the earliest question. Throws
// EmptyQuestionSetError on an empty pool.
int selectQuestion(const std::vector<Question>& pool, const BeliefState& belief,
                   const AnswerModel& model);

// Bayes rule over the candidate set. With eta > 0 the unnormalized masses are
// clamped below at 1e-12 so noisy runs never hard-zero a candidate; with
// eta = 0 exact zeros are kept and an all-zero posterior throws
// DegeneratePosteriorError.
BeliefState posteriorUpdate(const BeliefState& belief, const Question& q, Answer observed,
                            const AnswerModel& model);

struct TranscriptEvent {
    std::string type; // propose | question | answer | update | terminate
    nlohmann::ordered_json payload;
};

struct ActiveLearningResult {
    Plan chosenPlan;
    Preference chosenPreference;
    int chosenIndex = -1;
    int queryCount = 0;
    bool forcedTermination = false;
    double expectedDisadvantageAtStop = 0.0;
    std::vector<TranscriptEvent> transcript;
    BeliefState finalBelief;
    ProposalResult proposal;
};

using UserFn = std::function<Answer(const Question&)>;
using EventSink = std::function<void(const TranscriptEvent&)>;

// Full loop: propose candidates, plan for each, build the question pool,
// then ask until a plan's expected disadvantage crosses epsilon or the
// budget/pool is exhausted (forced termination on the best plan).
ActiveLearningResult runActiveLearning(const FridgeState& s0, const std::vector<std::string>& task,
                                       const std::vector<Demonstration>& demos,
                                       const LearnerConfig& learnerCfg,
                                       const PlannerConfig& plannerCfg,
                                       const ProposalConfig& proposalCfg, const UserFn& user,
                                       const Catalog& catalog,
                                       const EventSink& sink = nullptr);

} // namespace apricot
