#include <gtest/gtest.h>

#include <random>

#include "feynrules/errors.hpp"
#include "feynrules/json_io.hpp"
#include "feynrules/sequence.hpp"
#include "oracles.hpp"

using namespace feynrules;
using oracle::Cx;

namespace {

struct World {
    feynrules::Setup setup;
    AmplitudeAssignment asg;
    std::vector<std::vector<std::vector<Cx>>> tables;
};

World unitary_world(int slots, int labels, std::mt19937_64& rng) {
    World w;
    w.setup.id = "w";
    std::vector<int> l(labels);
    for (int i = 0; i < labels; ++i) l[i] = 10 + i;
    w.setup.slots.assign(slots, l);
    w.asg.setup = {"w"};
    for (int k = 0; k + 1 < slots; ++k) {
        auto u = oracle::random_unitary(labels, rng);
        IntervalTable t;
        for (int i = 0; i < labels; ++i)
            for (int j = 0; j < labels; ++j) t.entries[{l[i], l[j]}] = Pair(u[i][j].real(), u[i][j].imag());
        w.asg.intervals.push_back(t);
        w.tables.push_back(u);
    }
    return w;
}

// Explicit enumeration of every atomic path through the outcome sets.
Cx brute_amplitude(const World& w, const std::vector<std::vector<int>>& sets) {
    Cx total = 0;
    std::vector<std::size_t> idx(sets.size(), 0);
    for (;;) {
        Cx prod = 1;
        for (std::size_t k = 0; k + 1 < sets.size(); ++k)
            prod *= w.tables[k][sets[k][idx[k]] - 10][sets[k + 1][idx[k + 1]] - 10];
        total += prod;
        std::size_t k = 0;
        while (k < sets.size() && ++idx[k] == sets[k].size()) idx[k++] = 0;
        if (k == sets.size()) break;
    }
    return total;
}

}  // namespace

TEST(Outcome, NormalisesLabels) {
    EXPECT_EQ(Outcome({3, 1, 3}).labels(), (std::vector<int>{1, 3}));
    EXPECT_THROW(Outcome(std::vector<int>{}), SequenceError);
    EXPECT_TRUE(Outcome({1}).atomic());
    EXPECT_TRUE(Outcome({1, 2}).disjoint(Outcome({3})));
}

TEST(Sequence, ParallelRules) {
    const Sequence a("s", {Outcome{0}, Outcome{1}, Outcome{0}});
    const Sequence b("s", {Outcome{0}, Outcome{2}, Outcome{0}});
    const Sequence p = parallel(a, b);
    EXPECT_EQ(p.outcomes()[1], Outcome({1, 2}));
    EXPECT_EQ(parallel(b, a), p);
    // Differences at an end slot, at two slots, or overlapping outcomes are refused.
    EXPECT_FALSE(parallel_combinable(a, Sequence("s", {Outcome{1}, Outcome{1}, Outcome{0}})));
    EXPECT_FALSE(parallel_combinable(a, Sequence("s", {Outcome{0}, Outcome{2}, Outcome{1}})));
    EXPECT_FALSE(parallel_combinable(p, Sequence("s", {Outcome{0}, Outcome{1}, Outcome{0}})));
    EXPECT_FALSE(parallel_combinable(a, Sequence("t", {Outcome{0}, Outcome{2}, Outcome{0}})));
    EXPECT_THROW(parallel(a, a), SequenceError);
}

TEST(Sequence, SeriesRules) {
    const Sequence a("s", {Outcome{0}, Outcome{1}});
    const Sequence b("t", {Outcome{1}, Outcome{2}, Outcome{0}});
    const Sequence c = series(a, b);
    EXPECT_EQ(c.size(), 4u);
    EXPECT_EQ(c.setup(), (std::vector<std::string>{"s", "t"}));
    EXPECT_FALSE(series_combinable(a, a));
    EXPECT_THROW(series(a, a), SequenceError);
    EXPECT_EQ(series(b, a).size(), 4u);
}

TEST(Sequence, AmplitudeMatchesPathEnumeration) {
    std::mt19937_64 rng(71);
    for (int slots = 2; slots <= 5; ++slots) {
        const World w = unitary_world(slots, 3, rng);
        std::uniform_int_distribution<int> pick(0, 6);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::vector<int>> sets;
            std::vector<Outcome> outs;
            for (int k = 0; k < slots; ++k) {
                std::vector<int> s;
                // Non-empty subset of three labels; the ends stay atomic.
                const bool end = k == 0 || k + 1 == slots;
                const int mask = end ? 1 << (pick(rng) % 3) : pick(rng) + 1;
                for (int b = 0; b < 3; ++b)
                    if (mask & (1 << b)) s.push_back(10 + b);
                sets.push_back(s);
                outs.emplace_back(s);
            }
            const Pair got = amplitude(Sequence("w", outs), w.asg);
            const Cx want = brute_amplitude(w, sets);
            EXPECT_NEAR(got.c1(), want.real(), 1e-12);
            EXPECT_NEAR(got.c2(), want.imag(), 1e-12);
            EXPECT_NEAR(probability(Sequence("w", outs), w.asg), std::norm(want), 1e-12);
        }
    }
}

TEST(Sequence, UnitaryTablesConserveProbability) {
    std::mt19937_64 rng(72);
    for (int slots = 2; slots <= 6; ++slots)
        for (int labels = 1; labels <= 4; ++labels) {
            const World w = unitary_world(slots, labels, rng);
            const auto n = normalization_check(w.setup, w.asg);
            EXPECT_TRUE(n.preserving);
            EXPECT_LT(n.max_total_error, 1e-12);
            EXPECT_LT(n.max_interleave_change, 1e-12);
            for (const auto& t : n.totals) {
                EXPECT_NEAR(t.coarse_total, 1.0, 1e-12);
                EXPECT_NEAR(t.atomic_total, 1.0, 1e-12);
            }
        }
}

TEST(Sequence, NonUnitaryTableIsReported) {
    std::mt19937_64 rng(73);
    World w = unitary_world(3, 2, rng);
    w.asg.intervals[1].entries[{10, 10}] = Pair(2, 0);
    const auto n = normalization_check(w.setup, w.asg);
    EXPECT_FALSE(n.preserving);
    EXPECT_GT(n.max_total_error, 1e-3);
}

TEST(Sequence, TrivialInterleaveKeepsProbabilities) {
    std::mt19937_64 rng(74);
    const World w = unitary_world(4, 3, rng);
    const auto [s2, a2] = interleave_trivial(w.setup, w.asg, 1);
    EXPECT_EQ(s2.slots.size(), 5u);
    const Sequence s("w", {Outcome{10}, Outcome{11, 12}, Outcome{10}, Outcome{12}});
    EXPECT_NEAR(probability(interleave_trivial(s, w.setup, 1), a2), probability(s, w.asg), 1e-12);
}

TEST(Sequence, DestructiveInterference) {
    const double h = std::sqrt(0.5);
    IntervalTable bs;
    bs.entries = {{{0, 0}, Pair(h, 0)}, {{0, 1}, Pair(0, h)}, {{1, 0}, Pair(0, h)}, {{1, 1}, Pair(h, 0)}};
    const AmplitudeAssignment asg{{"mz"}, {bs, bs}};
    const Sequence dark("mz", {Outcome{0}, Outcome{0, 1}, Outcome{0}});
    const Sequence bright("mz", {Outcome{0}, Outcome{0, 1}, Outcome{1}});
    EXPECT_LT(probability(dark, asg), 1e-12);
    EXPECT_NEAR(probability(bright, asg), 1.0, 1e-12);
    EXPECT_NEAR(probability(Sequence("mz", {Outcome{0}, Outcome{0}, Outcome{0}}), asg), 0.25, 1e-12);
}

TEST(Sequence, MissingAmplitudeAndValidation) {
    IntervalTable t;
    t.entries = {{{0, 0}, Pair(1, 0)}};
    const AmplitudeAssignment asg{{"s"}, {t}};
    EXPECT_THROW(amplitude(Sequence("s", {Outcome{0}, Outcome{1}}), asg), MissingAmplitude);
    const feynrules::Setup setup{"s", {{0, 1}, {0, 1}}};
    EXPECT_THROW(validate(Sequence("s", {Outcome{0}, Outcome{2}}), setup), SequenceError);
    EXPECT_THROW(validate(Sequence("s", {Outcome{0}}), setup), SequenceError);
    EXPECT_THROW(validate(Sequence("t", {Outcome{0}, Outcome{1}}), setup), SequenceError);
    EXPECT_THROW(validate(Sequence("s", {Outcome{0}, Outcome{0, 1}}), setup), SequenceError);
    EXPECT_NO_THROW(validate(Sequence("s", {Outcome{0}, Outcome{1}}), setup));
}

TEST(Sequence, SeriesAmplitudeIsAProduct) {
    std::mt19937_64 rng(75);
    const World w1 = unitary_world(3, 2, rng);
    World w2 = unitary_world(4, 2, rng);
    w2.setup.id = "v";
    w2.asg.setup = {"v"};
    const auto both = concat(w1.asg, w2.asg);
    const Sequence a("w", {Outcome{10}, Outcome{10, 11}, Outcome{11}});
    const Sequence b("v", {Outcome{11}, Outcome{10}, Outcome{10, 11}, Outcome{10}});
    const auto pa = amplitude(a, w1.asg), pb = amplitude(b, w2.asg);
    const auto pab = amplitude(series(a, b), both);
    const Cx want = Cx(pa.c1(), pa.c2()) * Cx(pb.c1(), pb.c2());
    EXPECT_NEAR(pab.c1(), want.real(), 1e-12);
    EXPECT_NEAR(pab.c2(), want.imag(), 1e-12);
}

TEST(Symmetries, AllLawsHold) {
    const auto r = check_symmetries({5, 300, 4, 6});
    ASSERT_EQ(r.laws.size(), 7u);
    for (const auto& l : r.laws) {
        EXPECT_TRUE(l.passed()) << l.law << ": " << l.witness;
        EXPECT_EQ(l.instances, 300) << l.law;
    }
    EXPECT_TRUE(r.all_passed());
}

TEST(Json, SetupSchemaErrorsCarryAPath) {
    using io::Json;
    const auto bad = [](const char* text) {
        try {
            io::setup_from_json(Json::parse(text));
        } catch (const SchemaError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(bad(R"({"slots": [[0], [0]], "intervals": [[]]})").find("setup_id"), std::string::npos);
    EXPECT_NE(bad(R"({"setup_id": "s", "slots": [[0]], "intervals": []})").find("slots"), std::string::npos);
    EXPECT_NE(bad(R"({"setup_id": "s", "slots": [[0], [0]], "intervals": [[[0, 5, 1, 0]]]})").find("intervals[0][0]"),
              std::string::npos);
    EXPECT_NE(bad(R"({"setup_id": "s", "slots": [[0], [0]], "intervals": [[[0, 0, "x", 0]]]})").find("[2]"),
              std::string::npos);
    EXPECT_NE(bad(R"({"setup_id": "s", "slots": [[0, 0], [0]], "intervals": [[]]})").find("duplicate"),
              std::string::npos);
    EXPECT_TRUE(bad(R"({"setup_id": "s", "slots": [[0, 1], [0]], "intervals": [[[1, 0, 0.5, -0.5]]]})").empty());
}

TEST(Json, SequencesAcceptIntsAndLabelArrays) {
    const auto seqs = io::sequences_from_json(io::Json::parse(R"([[0, [1, 0], 1]])"), "s");
    ASSERT_EQ(seqs.size(), 1u);
    EXPECT_EQ(seqs[0].outcomes()[1], Outcome({0, 1}));
    EXPECT_EQ(seqs[0].setup(), (std::vector<std::string>{"s"}));
    EXPECT_THROW(io::sequences_from_json(io::Json::parse(R"({"sequences": [[0, "a"]]})"), "s"), SchemaError);
    EXPECT_THROW(io::sequences_from_json(io::Json::parse(R"({"setup_id": "s"})"), "s"), SchemaError);
}

TEST(Json, GammaParsing) {
    EXPECT_EQ(io::gamma_from_json(io::Json::parse("[1,0,0,-1,0,1,1,0]")), gamma_of(StandardForm::C1));
    EXPECT_THROW(io::gamma_from_json(io::Json::parse("[1,2]")), SchemaError);
}
