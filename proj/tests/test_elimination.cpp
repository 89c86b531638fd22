#include <gtest/gtest.h>

#include "feynrules/born.hpp"
#include "feynrules/reciprocity.hpp"
#include "oracles.hpp"

using namespace feynrules;

namespace {

const DerivationReport& report() {
    static const DerivationReport r = run_full_elimination();
    return r;
}

}  // namespace

TEST(Elimination, ExponentGrids) {
    EXPECT_EQ(exponent_grid(StandardForm::C1).size(), 17u);
    EXPECT_EQ(exponent_grid(StandardForm::C2).size(), 17u * 17u);
    EXPECT_EQ(exponent_grid(StandardForm::C3).size(), 17u * 17u);
}

TEST(Elimination, ExactlyOneAcceptance) {
    const auto& r = report();
    EXPECT_EQ(r.acceptances, 1);
    EXPECT_TRUE(r.table_matches);
    for (const auto& c : r.cells) {
        if (!is_accepted(c.verdict)) continue;
        EXPECT_EQ(c.form, StandardForm::C1);
        ASSERT_TRUE(c.op.has_value());
        EXPECT_EQ(*c.op, ReciprocityOp::conjugation());
        const auto& a = std::get<Accepted>(c.verdict);
        EXPECT_EQ(a.exponent.alpha, 2.0);
        EXPECT_FALSE(a.exponent.beta.has_value());
        EXPECT_TRUE(a.alternatives.empty());
    }
}

TEST(Elimination, CounterexamplesAreSelfValidating) {
    int certs = 0;
    for (const auto& c : report().cells) {
        const auto* ce = std::get_if<RejectedCounterexample>(&c.verdict);
        if (!ce) continue;
        ++certs;
        EXPECT_TRUE(certificate_valid(c.form, *c.op, *ce));
        EXPECT_FALSE(ce->construction.empty());
        // Rebuild the certificate by hand.
        const HFunction h{c.form, ce->exponent.alpha, ce->exponent.beta};
        const auto g = gamma_of(c.form).data();
        const oracle::M m{c.op->r1, c.op->r2, c.op->r3, c.op->r4};
        const oracle::P a{ce->a.c1(), ce->a.c2()}, b{ce->b.c1(), ce->b.c2()};
        const auto ca = oracle::mul(g, a, oracle::act(m, a));
        const auto cb = oracle::mul(g, b, oracle::act(m, b));
        const Pair cc(ca[0] + cb[0], ca[1] + cb[1]);
        EXPECT_NEAR(h_eval(h, ce->a) + h_eval(h, ce->b), 1.0, 1e-9);
        EXPECT_GT(std::abs(h_eval(h, cc) - 1.0), 0.1);
        EXPECT_GT(ce->exponents_refuted, 0);
    }
    EXPECT_EQ(certs, 2);
}

TEST(Elimination, TamperedCertificateIsRejected) {
    for (const auto& c : report().cells) {
        auto* ce = std::get_if<RejectedCounterexample>(&c.verdict);
        if (!ce) continue;
        auto bad = *ce;
        bad.b = Pair(ce->b.c1() * 1.1, ce->b.c2() * 1.1);
        EXPECT_FALSE(certificate_valid(c.form, *c.op, bad));
    }
}

TEST(Elimination, WitnessIsolatesAlphaTwo) {
    for (int k = 1; k <= 16; ++k) {
        const double alpha = 0.25 * k;
        const double res = conjugation_witness_residual(alpha);
        if (k == 8) EXPECT_LT(res, 1e-9);
        else EXPECT_GT(res, 1e-3) << alpha;
    }
    const auto w = witness_exponents(StandardForm::C1, ReciprocityOp::conjugation());
    ASSERT_EQ(w.size(), 1u);
    EXPECT_NEAR(w[0].alpha, 2.0, 1e-9);
}

TEST(Elimination, NonInvertibleAndInadmissibleForms) {
    EXPECT_TRUE(std::holds_alternative<RejectedNonInvertible>(eliminate(StandardForm::C2, ReciprocityOp::projection())));
    EXPECT_TRUE(std::holds_alternative<RejectedNotAdmissibleForm>(eliminate(StandardForm::N1, ReciprocityOp::identity())));
    EXPECT_TRUE(
        std::holds_alternative<RejectedInadmissibleExponents>(eliminate(StandardForm::C3, ReciprocityOp::identity())));
}

TEST(Elimination, DeterministicForFixedSeed) {
    const auto a = eliminate(StandardForm::C1, ReciprocityOp::identity(), {1e-9, 3, 500});
    const auto b = eliminate(StandardForm::C1, ReciprocityOp::identity(), {1e-9, 3, 500});
    ASSERT_TRUE(std::holds_alternative<RejectedCounterexample>(a));
    EXPECT_EQ(std::get<RejectedCounterexample>(a).a, std::get<RejectedCounterexample>(b).a);
    EXPECT_EQ(std::get<RejectedCounterexample>(a).b, std::get<RejectedCounterexample>(b).b);
}
