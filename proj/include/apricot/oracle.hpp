#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apricot/plan.hpp"
#include "apricot/preference.hpp"
#include "apricot/rng.hpp"

namespace apricot {

enum class Answer { Yes, No };

inline std::string_view answerName(Answer a) { return a == Answer::Yes ? "yes" : "no"; }

// A yes/no question asserting one concrete requirement for one category.
struct Question {
    Category category = Category::Fruits;
    Requirement asserted;
    std::string text;

    friend bool operator==(const Question& a, const Question& b) {
        return a.category == b.category && a.asserted == b.asserted;
    }
};

std::string renderQuestionText(Category category, const Requirement& asserted);

// Noisy-but-consistent user model: answers flip with probability eta.
struct AnswerModel {
    double eta = 0.1; // 0 <= eta < 0.5

    // Log-odds of a truthful answer, ln((1-eta)/eta). Infinite at eta = 0.
    double logitGap() const;
};

// Yes iff the preference's requirement for the category equals the asserted
// one. A held requirement that is more general or more specific than the
// asserted one yields no. Throws UncoveredCategoryError.
Answer deterministicAnswer(const Question& q, const Preference& theta);

// P(observation | q, theta) under the answer model.
double likelihood(Answer observed, const Question& q, const Preference& theta,
                  const AnswerModel& model);

// Deterministic answer with a seeded Bernoulli(eta) flip.
Answer simulatedUser(const Question& q, const Preference& groundTruth, const AnswerModel& model,
                     Rng& rng);

// Full finite requirement grammar for a category, filtered to the entries
// consistent with every demonstration. Deterministic enumeration order.
std::vector<Requirement> enumerateConsistentRequirements(Category category,
                                                         const std::vector<Demonstration>& demos,
                                                         const std::set<Category>& universe,
                                                         const Catalog& catalog);

struct ProposalConfig {
    int n = 5;
    bool includeGroundTruth = false;
    std::optional<Preference> groundTruth;
    std::uint64_t seed = 0;
};

struct ProposalResult {
    std::vector<Preference> candidates; // n entries, distinct unless padded
    int groundTruthIndex = -1;          // where the ground truth was inserted, if anywhere
    bool padded = false;                // true when duplicates fill the tail
};

// Samples n distinct demo-consistent joint preferences, favouring
// requirement-type diversity (weight 1/(1+count of that type already chosen
// for the category)). In includeGroundTruth mode the ground truth replaces
// one sample when it was not drawn. Throws InsufficientCandidatesError when
// fewer than n distinct consistent preferences exist.
ProposalResult proposeCandidates(const std::vector<Demonstration>& demos,
                                 const std::set<Category>& universe, const ProposalConfig& cfg,
                                 const Catalog& catalog);

// Questions separating two preferences: for each category whose requirements
// differ (canonical order), assert each side's requirement; truncated to m.
// Throws IdenticalPreferenceError when nothing differs.
std::vector<Question> generateQuestions(const Preference& a, const Preference& b, int m);

// Pairwise questions over all candidates, deduplicated, capped at
// m * nC2. Pairs of identical (padded) candidates are skipped.
std::vector<Question> buildQuestionPool(const std::vector<Preference>& candidates, int m);

} // namespace apricot
