#include <gtest/gtest.h>

#include <random>

#include "feynrules/born.hpp"
#include "feynrules/errors.hpp"
#include "oracles.hpp"

using namespace feynrules;

namespace {

double reference_h(const HFunction& h, const Pair& x) {
    switch (h.form) {
        case StandardForm::C1: return std::pow(x.c1() * x.c1() + x.c2() * x.c2(), h.alpha / 2);
        case StandardForm::C2: return std::pow(std::abs(x.c1()), h.alpha) * std::exp(*h.beta * x.c2() / x.c1());
        case StandardForm::C3: return std::pow(std::abs(x.c1()), h.alpha) * std::pow(std::abs(x.c2()), *h.beta);
        default: return std::pow(std::abs(x.c1()), h.alpha);
    }
}

}  // namespace

TEST(Born, ValidatesExponents) {
    EXPECT_THROW(solve_h(StandardForm::C2, 1), std::invalid_argument);
    EXPECT_THROW(solve_h(StandardForm::C1, 1, 2.0), std::invalid_argument);
    EXPECT_THROW(solve_h(StandardForm::C1, NAN), std::invalid_argument);
    EXPECT_NO_THROW(solve_h(StandardForm::C3, 1, 1.0));
}

TEST(Born, MatchesReferenceAndIsMultiplicative) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-2, 2), mag(0.2, 2);
    const HFunction hs[] = {solve_h(StandardForm::C1, 2),         solve_h(StandardForm::C1, 0.7),
                            solve_h(StandardForm::C2, 1.5, -0.5), solve_h(StandardForm::C3, 1, 3.0),
                            solve_h(StandardForm::N1, 2),         solve_h(StandardForm::N2, 1.2)};
    for (const auto& h : hs) {
        for (int i = 0; i < 500; ++i) {
            const Pair a(mag(rng) * (u(rng) < 0 ? -1 : 1), u(rng)), b(mag(rng) * (u(rng) < 0 ? -1 : 1), u(rng));
            EXPECT_NEAR(h_eval(h, a), reference_h(h, a), 1e-12 * (1 + reference_h(h, a)));
            const auto ab = oracle::mul(gamma_of(h.form).data(), {a.c1(), a.c2()}, {b.c1(), b.c2()});
            const double lhs = reference_h(h, Pair(ab[0], ab[1]));
            const double rhs = h_eval(h, a) * h_eval(h, b);
            EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(rhs))) << describe(h);
        }
    }
}

TEST(Born, DomainErrors) {
    EXPECT_THROW(h_eval(solve_h(StandardForm::C2, 1, 1.0), Pair(0, 1)), DomainError);
    EXPECT_THROW(h_eval(solve_h(StandardForm::C3, -1, 1.0), Pair(0, 1)), DomainError);
    EXPECT_THROW(h_eval(solve_h(StandardForm::C1, -2), Pair(0, 0)), DomainError);
    EXPECT_EQ(h_eval(solve_h(StandardForm::C1, 2), Pair(0, 0)), 0);
}

TEST(Born, AdmissibilityMatchesDependenceOnBothComponents) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> u(0.5, 2);
    struct Case {
        HFunction h;
        bool admissible;
    };
    const Case cases[] = {{solve_h(StandardForm::C1, 2), true},        {solve_h(StandardForm::C1, 0), false},
                          {solve_h(StandardForm::C2, 1, 0.0), false},  {solve_h(StandardForm::C2, 0, 1.0), true},
                          {solve_h(StandardForm::C3, 1, 0.0), false},  {solve_h(StandardForm::C3, 0, 2.0), false},
                          {solve_h(StandardForm::C3, 1, 1.0), true},   {solve_h(StandardForm::N1, 2), false},
                          {solve_h(StandardForm::N2, 3), false}};
    for (const auto& c : cases) {
        EXPECT_EQ(admissible(c.h), c.admissible) << describe(c.h);
        // Perturb each component alone and see whether h reacts.
        bool first = false, second = false;
        for (int i = 0; i < 20; ++i) {
            const Pair x(u(rng), u(rng));
            const double h0 = h_eval(c.h, x);
            first |= std::abs(h_eval(c.h, Pair(x.c1() * 1.3, x.c2())) - h0) > 1e-9;
            second |= std::abs(h_eval(c.h, Pair(x.c1(), x.c2() * 1.3)) - h0) > 1e-9;
        }
        EXPECT_EQ(first && second, c.admissible) << describe(c.h);
    }
}

TEST(Born, HomogeneityDegree) {
    const HFunction hs[] = {solve_h(StandardForm::C1, 2), solve_h(StandardForm::C2, 1.5, 2.0),
                            solve_h(StandardForm::C3, 1, 2.5)};
    for (const auto& h : hs) {
        const Pair x(0.7, 1.3);
        EXPECT_NEAR(h_eval(h, Pair(3 * x.c1(), 3 * x.c2())), std::pow(3, homogeneity_degree(h)) * h_eval(h, x), 1e-9);
    }
}
