#include "apricot/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "apricot/errors.hpp"
#include "apricot/json_io.hpp"
#include "apricot/reward.hpp"

namespace apricot {

std::string_view approachName(Approach a) {
    switch (a) {
        case Approach::Apricot: return "apricot";
        case Approach::NonInteractive: return "non-interactive";
        case Approach::RandomQuestion: return "random-question";
        case Approach::ExhaustQuestions: return "exhaust-questions";
    }
    throw std::logic_error("bad approach");
}

std::optional<Approach> approachFromName(std::string_view name) {
    for (Approach a : kAllApproaches)
        if (approachName(a) == name) return a;
    return std::nullopt;
}

namespace {

std::set<Category> universeOf(const TestCase& tc, const Catalog& catalog) {
    std::set<Category> universe;
    for (const std::string& o : tc.scenario.task) universe.insert(catalog.lookup(o).category);
    for (const Demonstration& d : tc.demos)
        for (const Placement& p : d.after.placements())
            universe.insert(catalog.lookup(p.object).category);
    return universe;
}

Metrics scoreRun(const TestCase& tc, const Plan& plan, const Preference& chosen,
                 const std::vector<Plan>& library, const LearnerConfig& learner,
                 const Catalog& catalog) {
    Metrics m;
    ConstraintResult geometry = constraint(tc.scenario.initial, plan, catalog);
    std::size_t feasibleObjects = 0;
    for (const PlanAction& a : plan.actions)
        if (a.x
            && std::find(geometry.violators.begin(), geometry.violators.end(), a.object)
                   == geometry.violators.end())
            ++feasibleObjects;
    m.feasiblePct = tc.scenario.task.empty()
                        ? 100.0
                        : 100.0 * static_cast<double>(feasibleObjects)
                              / static_cast<double>(tc.scenario.task.size());
    m.prefSatisfiedPct = 100.0 * reward(plan, chosen, catalog);

    double bestLibraryReward = 0.0;
    for (const Plan& p : library)
        bestLibraryReward = std::max(bestLibraryReward, reward(p, tc.groundTruth, catalog));
    m.plannerEps = 1.0 - bestLibraryReward;
    m.boundRHS = static_cast<double>(learner.candidateCount) * learner.epsilon + m.plannerEps;

    // Certified cases carry a generation-time proof that ground-truth reward
    // 1 is reachable, so the optimum is known without a search.
    double optimal = 1.0;
    if (tc.certified) {
        m.regretMeasured = true;
    } else if (tc.scenario.task.size() <= 5) {
        Plan best = bruteForceOptimal(tc.scenario.initial, tc.scenario.task, tc.groundTruth,
                                      catalog);
        optimal = reward(best, tc.groundTruth, catalog);
        m.regretMeasured = true;
    }
    if (m.regretMeasured) m.regret = optimal - reward(plan, tc.groundTruth, catalog);
    m.preferenceAccurate = preferenceEquivalent(plan, tc.groundTruth, catalog, optimal);
    return m;
}

RunRecord baseRecord(const TestCase& tc, Approach approach, std::uint64_t seed) {
    RunRecord r;
    r.caseId = tc.id;
    r.family = tc.family;
    r.approach = approach;
    r.seed = seed;
    return r;
}

} // namespace

RunRecord evaluateCase(const TestCase& tc, Approach approach, const RunConfig& cfg,
                       const Catalog& catalog) {
    const std::uint64_t seed = deriveSeed(cfg.seed, static_cast<std::uint64_t>(tc.id));
    RunRecord record = baseRecord(tc, approach, seed);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ProposalConfig proposal;
        proposal.n = cfg.learner.candidateCount;
        proposal.seed = deriveSeed(seed, 1);
        proposal.includeGroundTruth =
            cfg.includeGroundTruth && approach != Approach::NonInteractive;
        if (proposal.includeGroundTruth) proposal.groundTruth = tc.groundTruth;

        if (approach == Approach::NonInteractive) {
            // No questions: commit to the first proposed candidate.
            auto candidates = proposeCandidates(tc.demos, universeOf(tc, catalog), proposal,
                                                catalog);
            const Preference& chosen = candidates.candidates.front();
            Plan plan = planWithRefinement(tc.scenario.initial, tc.scenario.task, chosen,
                                           cfg.planner, catalog)
                            .plan;
            record.metrics = scoreRun(tc, plan, chosen, {plan}, cfg.learner, catalog);
            record.chosenIndex = 0;
            record.chosenPreference = preferenceKey(chosen);
            record.ok = true;
            return record;
        }

        LearnerConfig learner = cfg.learner;
        if (approach == Approach::RandomQuestion) {
            learner.policy = QuestionPolicy::RandomUnasked;
            learner.policySeed = deriveSeed(seed, 2);
        } else if (approach == Approach::ExhaustQuestions) {
            // Never terminate early, never run out of budget: drain the pool.
            learner.epsilon = -1.0;
            learner.maxQuestions = std::numeric_limits<int>::max();
        }

        Rng userRng(deriveSeed(seed, 3));
        AnswerModel model{learner.answerNoiseEta};
        UserFn user = [&](const Question& q) {
            return simulatedUser(q, tc.groundTruth, model, userRng);
        };

        ActiveLearningResult run =
            runActiveLearning(tc.scenario.initial, tc.scenario.task, tc.demos, learner,
                              cfg.planner, proposal, user, catalog);
        record.metrics = scoreRun(tc, run.chosenPlan, run.chosenPreference,
                                  run.finalBelief.planLibrary, cfg.learner, catalog);
        record.metrics.queries = run.queryCount;
        record.metrics.forcedTermination = run.forcedTermination;
        record.chosenIndex = run.chosenIndex;
        record.chosenPreference = preferenceKey(run.chosenPreference);
        record.groundTruthIndex = run.proposal.groundTruthIndex;
        record.expectedDisadvantageAtStop = run.expectedDisadvantageAtStop;
        record.transcript = std::move(run.transcript);
        record.ok = true;
    } catch (const Error& e) {
        record.ok = false;
        record.error = e.what();
    }
    record.wallMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now()
                                                              - t0)
                        .count();
    return record;
}

std::vector<RunRecord> runBenchmark(const std::vector<TestCase>& cases, Approach approach,
                                    const RunConfig& cfg, const Catalog& catalog,
                                    std::ostream* out) {
    std::vector<RunRecord> records;
    records.reserve(cases.size());
    for (const TestCase& tc : cases) {
        records.push_back(evaluateCase(tc, approach, cfg, catalog));
        if (out) *out << runRecordToJson(records.back()).dump() << '\n';
    }
    return records;
}

nlohmann::ordered_json runRecordToJson(const RunRecord& r) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["caseId"] = r.caseId;
    j["family"] = familyName(r.family);
    j["approach"] = approachName(r.approach);
    j["seed"] = r.seed;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["error"] = r.error;
        return j;
    }
    j["queries"] = r.metrics.queries;
    j["preferenceAccurate"] = r.metrics.preferenceAccurate;
    j["feasiblePct"] = r.metrics.feasiblePct;
    j["prefSatisfiedPct"] = r.metrics.prefSatisfiedPct;
    j["regretMeasured"] = r.metrics.regretMeasured;
    if (r.metrics.regretMeasured) j["regret"] = r.metrics.regret;
    j["plannerEps"] = r.metrics.plannerEps;
    j["boundRHS"] = r.metrics.boundRHS;
    j["forcedTermination"] = r.metrics.forcedTermination;
    j["chosenIndex"] = r.chosenIndex;
    j["chosenPreference"] = r.chosenPreference;
    j["groundTruthIndex"] = r.groundTruthIndex;
    j["expectedDisadvantageAtStop"] = r.expectedDisadvantageAtStop;
    return j;
}

RunRecord runRecordFromJson(const nlohmann::json& j) {
    requireSchemaVersion(j);
    RunRecord r;
    r.caseId = j.at("caseId").get<int>();
    auto fam = familyFromName(j.at("family").get<std::string>());
    auto app = approachFromName(j.at("approach").get<std::string>());
    if (!fam || !app) throw MalformedInputError("unknown family or approach in record");
    r.family = *fam;
    r.approach = *app;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ok = j.at("ok").get<bool>();
    if (!r.ok) {
        r.error = j.value("error", "");
        return r;
    }
    r.metrics.queries = j.at("queries").get<int>();
    r.metrics.preferenceAccurate = j.at("preferenceAccurate").get<bool>();
    r.metrics.feasiblePct = j.at("feasiblePct").get<double>();
    r.metrics.prefSatisfiedPct = j.at("prefSatisfiedPct").get<double>();
    r.metrics.regretMeasured = j.at("regretMeasured").get<bool>();
    if (r.metrics.regretMeasured) r.metrics.regret = j.at("regret").get<double>();
    r.metrics.plannerEps = j.at("plannerEps").get<double>();
    r.metrics.boundRHS = j.at("boundRHS").get<double>();
    r.metrics.forcedTermination = j.at("forcedTermination").get<bool>();
    r.chosenIndex = j.at("chosenIndex").get<int>();
    r.chosenPreference = j.at("chosenPreference").get<std::string>();
    r.groundTruthIndex = j.at("groundTruthIndex").get<int>();
    r.expectedDisadvantageAtStop = j.at("expectedDisadvantageAtStop").get<double>();
    return r;
}

std::vector<RunRecord> readRecords(std::istream& in) {
    std::vector<RunRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(runRecordFromJson(nlohmann::json::parse(line)));
    }
    return records;
}

namespace {

SummaryRow aggregate(const std::string& group, const std::vector<const RunRecord*>& rs) {
    SummaryRow row;
    row.group = group;
    row.runs = static_cast<int>(rs.size());
    double queries = 0, accurate = 0, feasible = 0, satisfied = 0, regret = 0;
    std::vector<int> queryCounts;
    int okCount = 0, regretCount = 0;
    for (const RunRecord* r : rs) {
        if (!r->ok) {
            row.failures += 1;
            continue;
        }
        okCount += 1;
        queries += r->metrics.queries;
        queryCounts.push_back(r->metrics.queries);
        accurate += r->metrics.preferenceAccurate ? 1 : 0;
        feasible += r->metrics.feasiblePct;
        satisfied += r->metrics.prefSatisfiedPct;
        if (r->metrics.regretMeasured) {
            regret += r->metrics.regret;
            regretCount += 1;
        }
    }
    if (okCount > 0) {
        row.meanQueries = queries / okCount;
        std::sort(queryCounts.begin(), queryCounts.end());
        const std::size_t mid = queryCounts.size() / 2;
        row.medianQueries = queryCounts.size() % 2 == 1
                                ? queryCounts[mid]
                                : (queryCounts[mid - 1] + queryCounts[mid]) / 2.0;
        row.accuracyPct = 100.0 * accurate / okCount;
        row.feasiblePct = feasible / okCount;
        row.meanPrefSatisfiedPct = satisfied / okCount;
    }
    if (regretCount > 0) row.meanRegret = regret / regretCount;
    return row;
}

} // namespace

Summary summarize(const std::vector<RunRecord>& records) {
    Summary s;
    for (Family f : kAllFamilies) {
        std::vector<const RunRecord*> group;
        for (const RunRecord& r : records)
            if (r.family == f) group.push_back(&r);
        if (!group.empty()) s.rows.push_back(aggregate(std::string(familyName(f)), group));
    }
    std::vector<const RunRecord*> all;
    for (const RunRecord& r : records) all.push_back(&r);
    s.rows.push_back(aggregate("overall", all));
    return s;
}

std::string formatSummary(const Summary& summary, Approach approach) {
    std::ostringstream out;
    out << "approach: " << approachName(approach) << '\n';
    out << std::left << std::setw(24) << "group" << std::right << std::setw(6) << "runs"
        << std::setw(6) << "fail" << std::setw(9) << "queries" << std::setw(8) << "med"
        << std::setw(9) << "acc%" << std::setw(9) << "feas%" << std::setw(9) << "sat%"
        << std::setw(9) << "regret" << '\n';
    out << std::fixed;
    for (const SummaryRow& row : summary.rows) {
        out << std::left << std::setw(24) << row.group << std::right << std::setw(6) << row.runs
            << std::setw(6) << row.failures << std::setw(9) << std::setprecision(2)
            << row.meanQueries << std::setw(8) << std::setprecision(1) << row.medianQueries
            << std::setw(9) << row.accuracyPct << std::setw(9) << row.feasiblePct << std::setw(9)
            << row.meanPrefSatisfiedPct << std::setw(9) << std::setprecision(4) << row.meanRegret
            << '\n';
    }
    // Reference values from the original study, printed for orientation only
    // (noisy-answer runs are not expected to reproduce them exactly).
    out << "reference: non-interactive accuracy 58.0%, interactive mean queries 2.15, "
           "feasibility 96.0%\n";
    return out.str();
}

BoundReport validateBound(const std::vector<RunRecord>& records, double tolerance) {
    BoundReport report;
    for (const RunRecord& r : records) {
        if (!r.ok || !r.metrics.regretMeasured) continue;
        report.checked += 1;
        if (r.metrics.regret <= r.metrics.boundRHS + tolerance)
            report.satisfied += 1;
        else
            report.failures.push_back(r.caseId);
        report.maxSlack = std::max(report.maxSlack, r.metrics.boundRHS - r.metrics.regret);
    }
    return report;
}

ActiveLearningResult interactiveSession(const TestCase& tc, const RunConfig& cfg,
                                        const Catalog& catalog, std::istream& in,
                                        std::ostream& out, std::ostream* transcriptOut) {
    ProposalConfig proposal;
    proposal.n = cfg.learner.candidateCount;
    proposal.seed = deriveSeed(cfg.seed, static_cast<std::uint64_t>(tc.id));
    if (cfg.includeGroundTruth) {
        proposal.includeGroundTruth = true;
        proposal.groundTruth = tc.groundTruth;
    }

    EventSink sink = [&](const TranscriptEvent& ev) {
        if (!transcriptOut) return;
        *transcriptOut << transcriptEventToJson(ev).dump() << '\n';
        transcriptOut->flush();
    };

    UserFn user = [&](const Question& q) {
        out << q.text << " [y/n] " << std::flush;
        std::string line;
        while (std::getline(in, line)) {
            if (line == "y" || line == "yes" || line == "Y") return Answer::Yes;
            if (line == "n" || line == "no" || line == "N") return Answer::No;
            out << "please answer y or n: " << std::flush;
        }
        throw InputAbortError{};
    };

    return runActiveLearning(tc.scenario.initial, tc.scenario.task, tc.demos, cfg.learner,
                             cfg.planner, proposal, user, catalog, sink);
}

ReplanResult scenarioReplan(const FridgeState& initial, const std::vector<std::string>& task,
                            const Preference& theta, const std::vector<MutationStep>& mutations,
                            const PlannerConfig& cfg, const Catalog& catalog) {
    ReplanResult result;
    result.finalState = initial;
    std::vector<std::string> remaining = task;

    auto due = [&](const MutationStep& m) { return m.afterAction == result.executedActions; };
    auto applyDue = [&]() {
        bool applied = false;
        for (const MutationStep& m : mutations) {
            if (!due(m)) continue;
            for (const std::string& o : m.remove) result.finalState = result.finalState.removed(o);
            for (const Placement& p : m.move) {
                result.finalState = result.finalState.removed(p.object);
                result.finalState = result.finalState.applied(p, catalog);
            }
            for (const std::string& o : m.add) remaining.push_back(o);
            applied = true;
        }
        return applied;
    };

    std::vector<PlanAction> queue;
    bool needPlan = true;
    applyDue();
    while (true) {
        if (needPlan && !remaining.empty()) {
            Plan plan = planWithRefinement(result.finalState, remaining, theta, cfg, catalog).plan;
            queue.clear();
            for (const PlanAction& a : plan.actions)
                if (a.x) queue.push_back(a);
            result.plans.push_back(std::move(plan));
            result.replans += 1;
            needPlan = false;
            if (queue.empty()) break; // nothing placeable anymore
        }
        if (queue.empty()) break;

        PlanAction action = queue.front();
        queue.erase(queue.begin());
        bool satisfied = satisfies(action.object, action.target, theta,
                                   result.finalState.occupancy(catalog), catalog);
        try {
            result.finalState = result.finalState.applied(
                {action.object, action.target.shelf, *action.x}, catalog);
        } catch (const CollisionError&) {
            needPlan = true; // world changed under us; plan around it
            continue;
        }
        remaining.erase(std::find(remaining.begin(), remaining.end(), action.object));
        result.executedActions += 1;
        result.satisfiedActions += satisfied ? 1 : 0;
        result.executed.push_back(action);
        if (applyDue()) needPlan = true;
    }
    result.executedReward = result.executedActions == 0
                                ? 1.0
                                : static_cast<double>(result.satisfiedActions)
                                      / static_cast<double>(result.executedActions);
    // replans counts plans computed after the first.
    if (result.replans > 0) result.replans -= 1;
    return result;
}

} // namespace apricot
