#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apricot/belief.hpp"
#include "apricot/benchgen.hpp"

namespace apricot {

enum class Approach {
    Apricot,          // info-gain questions, disadvantage termination
    NonInteractive,   // first proposed candidate, zero questions
    RandomQuestion,   // uniform random questions, same termination rule
    ExhaustQuestions, // asks the whole pool, then picks the best plan
};

inline constexpr std::array<Approach, 4> kAllApproaches = {
    Approach::Apricot,
    Approach::NonInteractive,
    Approach::RandomQuestion,
    Approach::ExhaustQuestions,
};

std::string_view approachName(Approach a);
std::optional<Approach> approachFromName(std::string_view name);

struct RunConfig {
    LearnerConfig learner;
    PlannerConfig planner;
    bool includeGroundTruth = true; // seed the candidate set with the truth
    std::uint64_t seed = 7;
};

struct Metrics {
    int queries = 0;
    // Value equivalence with the ground truth: the chosen plan is reward-1
    // under both the chosen preference and the truth.
    bool preferenceAccurate = false;
    double feasiblePct = 0.0;      // % of task objects placed collision-free
    double prefSatisfiedPct = 0.0; // % of actions admissible under the chosen preference
    double regret = 0.0;           // optimal ground-truth reward minus achieved
    bool regretMeasured = false;   // false when no optimality reference exists
    double plannerEps = 0.0;       // 1 - best ground-truth reward in the plan library
    double boundRHS = 0.0;         // N * epsilon + plannerEps
    bool forcedTermination = false;
};

struct RunRecord {
    int caseId = 0;
    Family family = Family::SpecificLocation;
    Approach approach = Approach::Apricot;
    std::uint64_t seed = 0;
    bool ok = false;        // run completed; failures carry `error` instead
    std::string error;
    Metrics metrics;
    int chosenIndex = -1;
    std::string chosenPreference; // text key of the chosen preference
    int groundTruthIndex = -1;    // slot of the truth in the candidate set, if seeded
    double expectedDisadvantageAtStop = 0.0;
    // Kept in memory for triage (bound failures, posterior checks); not part
    // of the JSONL record, which stays byte-stable across machines.
    std::vector<TranscriptEvent> transcript;
    double wallMs = 0.0;
};

nlohmann::ordered_json runRecordToJson(const RunRecord& r);
RunRecord runRecordFromJson(const nlohmann::json& j);

// One benchmark case under one approach with a simulated answerer. The
// per-case seed is derived from cfg.seed and the case id, so records are
// reproducible independent of evaluation order. Run failures are captured
// in the record, never thrown.
RunRecord evaluateCase(const TestCase& tc, Approach approach, const RunConfig& cfg,
                       const Catalog& catalog);

// Evaluates every case, optionally streaming JSONL records to `out`.
std::vector<RunRecord> runBenchmark(const std::vector<TestCase>& cases, Approach approach,
                                    const RunConfig& cfg, const Catalog& catalog,
                                    std::ostream* out = nullptr);

std::vector<RunRecord> readRecords(std::istream& in);

struct SummaryRow {
    std::string group; // family name or "overall"
    int runs = 0;
    int failures = 0;
    double meanQueries = 0.0;
    double medianQueries = 0.0;
    double accuracyPct = 0.0;
    double feasiblePct = 0.0;
    double meanPrefSatisfiedPct = 0.0;
    double meanRegret = 0.0; // over runs with a measured regret
};

struct Summary {
    std::vector<SummaryRow> rows; // per family, then overall
};

Summary summarize(const std::vector<RunRecord>& records);

// Fixed-width table plus the published reference values for orientation.
std::string formatSummary(const Summary& summary, Approach approach);

struct BoundReport {
    int checked = 0;   // records with a measured regret
    int satisfied = 0; // regret <= boundRHS + tolerance
    std::vector<int> failures;
    double maxSlack = 0.0; // max of boundRHS - regret over checked records
};

// Verifies regret <= N * epsilon + plannerEps on every measured record.
BoundReport validateBound(const std::vector<RunRecord>& records, double tolerance = 1e-9);

// Interactive loop on stdin/stdout ("y"/"n" answers). EOF mid-session throws
// InputAbortError after flushing the partial transcript to `transcriptOut`.
ActiveLearningResult interactiveSession(const TestCase& tc, const RunConfig& cfg,
                                        const Catalog& catalog, std::istream& in,
                                        std::ostream& out,
                                        std::ostream* transcriptOut = nullptr);

// A world change injected while a plan is being executed.
struct MutationStep {
    int afterAction = 0;              // applied once this many actions have run
    std::vector<std::string> add;     // new objects joining the task queue
    std::vector<std::string> remove;  // objects taken out of the fridge
    std::vector<Placement> move;      // objects teleported inside the fridge
};

struct ReplanResult {
    FridgeState finalState;
    int executedActions = 0;
    int satisfiedActions = 0; // judged at execution time, evolving state
    int replans = 0;          // plans computed after the initial one
    double executedReward = 0.0;
    std::vector<PlanAction> executed;
    std::vector<Plan> plans; // every plan computed, in order
};

// Executes a plan action by action, applying mutations as they come due and
// replanning the remaining task after every mutation or collision.
ReplanResult scenarioReplan(const FridgeState& initial, const std::vector<std::string>& task,
                            const Preference& theta, const std::vector<MutationStep>& mutations,
                            const PlannerConfig& cfg, const Catalog& catalog);

} // namespace apricot
