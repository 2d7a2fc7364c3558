#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "apricot/errors.hpp"
#include "apricot/oracle.hpp"

using namespace apricot;

namespace {

const SpecificLocation kTL{Shelf::Top, Side::Left};
const SpecificLocation kTR{Shelf::Top, Side::Right};
const SpecificLocation kBL{Shelf::Bottom, Side::Left};
const SpecificLocation kBR{Shelf::Bottom, Side::Right};

const Catalog& cat() { return Catalog::builtin(); }

const std::set<Category> kUniverse = {Category::Fruits, Category::Vegetables,
                                      Category::Condiments, Category::DairyProducts,
                                      Category::JuiceAndSoftDrinks};

Preference homes() {
    Preference p;
    p.requirements.emplace(Category::Fruits, SpecificLoc{kTL});
    p.requirements.emplace(Category::Vegetables, SpecificLoc{kTR});
    p.requirements.emplace(Category::Condiments, SpecificLoc{kBL});
    p.requirements.emplace(Category::DairyProducts, SpecificLoc{kBR});
    p.requirements.emplace(Category::JuiceAndSoftDrinks,
                           SpecificLoc{SpecificLocation{Shelf::Middle, Side::Left}});
    return p;
}

} // namespace

TEST_CASE("question text is the rendered requirement description") {
    CHECK(renderQuestionText(Category::Fruits, SpecificLoc{kTL})
          == "Do you prefer fruits to be placed at the left side of top shelf?");
    CHECK(renderQuestionText(Category::DairyProducts, SameShelfAs{Category::Condiments})
          == "Do you prefer dairy-products to be placed on the same shelf next to condiments?");
}

TEST_CASE("answers assert exact requirement identity") {
    Preference p = homes();
    p.requirements.at(Category::Fruits) = GeneralLoc{GeneralLocation::TopShelf};

    Question general{Category::Fruits, GeneralLoc{GeneralLocation::TopShelf}, ""};
    Question specific{Category::Fruits, SpecificLoc{kTL}, ""};
    CHECK(deterministicAnswer(general, p) == Answer::Yes);
    // Holding the general form does not endorse the narrower one.
    CHECK(deterministicAnswer(specific, p) == Answer::No);

    Preference empty;
    CHECK_THROWS_AS(deterministicAnswer(general, empty), UncoveredCategoryError);
}

TEST_CASE("answer model log-odds and likelihood") {
    CHECK(AnswerModel{0.1}.logitGap() == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(std::isinf(AnswerModel{0.0}.logitGap()));

    Preference p = homes();
    Question q{Category::Fruits, SpecificLoc{kTL}, ""};
    AnswerModel m{0.1};
    CHECK(likelihood(Answer::Yes, q, p, m) == doctest::Approx(0.9));
    CHECK(likelihood(Answer::No, q, p, m) == doctest::Approx(0.1));
    AnswerModel exact{0.0};
    CHECK(likelihood(Answer::Yes, q, p, exact) == 1.0);
    CHECK(likelihood(Answer::No, q, p, exact) == 0.0);
}

TEST_CASE("simulated user flips at the configured rate") {
    Preference p = homes();
    Question q{Category::Fruits, SpecificLoc{kTL}, ""};

    Rng noiseless(7);
    AnswerModel exact{0.0};
    for (int i = 0; i < 100; ++i) CHECK(simulatedUser(q, p, exact, noiseless) == Answer::Yes);

    Rng rng(99);
    AnswerModel noisy{0.1};
    int flips = 0;
    for (int i = 0; i < 10000; ++i)
        if (simulatedUser(q, p, noisy, rng) == Answer::No) ++flips;
    CHECK(flips / 10000.0 == doctest::Approx(0.1).epsilon(0.2)); // within 0.08..0.12
}

TEST_CASE("requirement grammar has 166 entries per category when unconstrained") {
    // 6 specific + 5 general + 1 together + 4 same-shelf + 2*6*5 exception
    // + 3*6*5 conditional.
    for (Category c : kUniverse) {
        auto pool = enumerateConsistentRequirements(c, {}, kUniverse, cat());
        CHECK(pool.size() == 166);
    }
}

TEST_CASE("demonstrations prune the grammar but keep the truth") {
    // One demo: an apple placed at top-left.
    Demonstration demo;
    demo.before = FridgeState{};
    demo.after = FridgeState{}.applied({"apple", Shelf::Top, 10.0}, cat());
    demo.putAway = {"apple"};

    auto pool = enumerateConsistentRequirements(Category::Fruits, {demo}, kUniverse, cat());
    CHECK(pool.size() < 166);
    auto holds = [&](const Requirement& r) {
        return std::find(pool.begin(), pool.end(), r) != pool.end();
    };
    CHECK(holds(SpecificLoc{kTL}));
    CHECK(holds(GeneralLoc{GeneralLocation::TopShelf}));
    CHECK(holds(TogetherSameCategory{}));
    CHECK(!holds(SpecificLoc{kBR}));
    CHECK(!holds(GeneralLoc{GeneralLocation::BottomShelf}));
}

TEST_CASE("candidate proposal draws distinct consistent preferences") {
    ProposalConfig cfg;
    cfg.n = 5;
    cfg.seed = 31;
    auto result = proposeCandidates({}, kUniverse, cfg, cat());
    REQUIRE(result.candidates.size() == 5);
    CHECK(result.groundTruthIndex == -1);
    CHECK(!result.padded);
    std::set<std::string> keys;
    for (const auto& c : result.candidates) {
        CHECK(c.requirements.size() == kUniverse.size());
        keys.insert(preferenceKey(c));
    }
    CHECK(keys.size() == 5);
}

TEST_CASE("ground truth is seeded into the candidate set when requested") {
    ProposalConfig cfg;
    cfg.n = 5;
    cfg.seed = 31;
    cfg.includeGroundTruth = true;
    cfg.groundTruth = homes();
    auto result = proposeCandidates({}, kUniverse, cfg, cat());
    REQUIRE(result.groundTruthIndex >= 0);
    REQUIRE(result.groundTruthIndex < 5);
    CHECK(preferenceKey(result.candidates[static_cast<std::size_t>(result.groundTruthIndex)])
          == preferenceKey(homes()));
}

TEST_CASE("proposal fails fast when the space is too small") {
    ProposalConfig cfg;
    cfg.n = 200; // single-category space holds only 166 joints
    CHECK_THROWS_AS(proposeCandidates({}, {Category::Fruits}, cfg, cat()),
                    InsufficientCandidatesError);
}

TEST_CASE("questions assert each side of every differing category") {
    Preference a = homes();
    Preference b = homes();
    b.requirements.at(Category::Vegetables) = GeneralLoc{GeneralLocation::BottomShelf};

    auto qs = generateQuestions(a, b, 20);
    REQUIRE(qs.size() == 2);
    CHECK(qs[0].category == Category::Vegetables);
    CHECK(qs[0].asserted == Requirement{SpecificLoc{kTR}});
    CHECK(qs[1].asserted == Requirement{GeneralLoc{GeneralLocation::BottomShelf}});
    CHECK(qs[0].text == renderQuestionText(Category::Vegetables, qs[0].asserted));

    auto truncated = generateQuestions(a, b, 1);
    CHECK(truncated.size() == 1);

    CHECK_THROWS_AS(generateQuestions(a, a, 20), IdenticalPreferenceError);
}

TEST_CASE("question pool deduplicates and skips padded pairs") {
    Preference a = homes();
    Preference b = homes();
    b.requirements.at(Category::Fruits) = GeneralLoc{GeneralLocation::TopShelf};
    Preference c = homes();
    c.requirements.at(Category::Fruits) = TogetherSameCategory{};

    // Pairs (a,b), (a,c), (b,c) each yield both sides; the shared requirement
    // of a appears in two pairs and must be emitted once.
    auto pool = buildQuestionPool({a, b, c}, 2);
    CHECK(pool.size() == 3);
    std::set<std::string> texts;
    for (const auto& q : pool) texts.insert(q.text);
    CHECK(texts.size() == 3);

    auto withPad = buildQuestionPool({a, a, b}, 2);
    CHECK(withPad.size() == 2);

    // Five fully distinct candidates stay within the m * nC2 cap.
    ProposalConfig cfg;
    cfg.n = 5;
    cfg.seed = 31;
    auto result = proposeCandidates({}, kUniverse, cfg, cat());
    auto big = buildQuestionPool(result.candidates, 2);
    CHECK(big.size() <= 20);
    CHECK(big.size() >= 2);
}
