#include <gtest/gtest.h>

#include <random>

#include "feynrules/associativity.hpp"
#include "feynrules/errors.hpp"
#include "feynrules/pair.hpp"
#include "feynrules/sampling.hpp"
#include "oracles.hpp"

using namespace feynrules;

namespace {

oracle::P op(const Pair& p) { return {p.c1(), p.c2()}; }

GammaVector gv(const oracle::G& g) { return GammaVector(g); }

}  // namespace

TEST(Pair, RejectsNonFinite) {
    EXPECT_THROW(Pair(std::nan(""), 0), DomainError);
    EXPECT_THROW(Pair(0, INFINITY), DomainError);
    EXPECT_NO_THROW(Pair(-1e300, 1e300));
}

TEST(Pair, ComplexProductMatchesStdComplex) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 200; ++i) {
        const std::complex<double> a(u(rng), u(rng)), b(u(rng), u(rng));
        const Pair c = complex_mul({a.real(), a.imag()}, {b.real(), b.imag()});
        EXPECT_NEAR(c.c1(), (a * b).real(), 1e-12);
        EXPECT_NEAR(c.c2(), (a * b).imag(), 1e-12);
    }
}

TEST(Pair, BilinearProductMatchesFormula) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        oracle::G g;
        for (auto& x : g) x = u(rng);
        const Pair a(u(rng), u(rng)), b(u(rng), u(rng));
        EXPECT_LT(oracle::dist(op(bilinear_mul(gv(g), a, b)), oracle::mul(g, op(a), op(b))), 1e-12);
    }
}

TEST(Pair, StandardFormsAreTheExpectedProducts) {
    const Pair a(2, 3), b(5, 7);
    EXPECT_EQ(bilinear_mul(gamma_of(StandardForm::C1), a, b), complex_mul(a, b));
    EXPECT_EQ(bilinear_mul(gamma_of(StandardForm::C2), a, b), Pair(10, 29));
    EXPECT_EQ(bilinear_mul(gamma_of(StandardForm::C3), a, b), Pair(10, 21));
    EXPECT_EQ(bilinear_mul(gamma_of(StandardForm::N1), a, b), Pair(10, 14));
    EXPECT_EQ(bilinear_mul(gamma_of(StandardForm::N2), a, b), Pair(10, 15));
}

TEST(Pair, SwapComponentsConjugatesBySwap) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2, 2);
    oracle::G g;
    for (auto& x : g) x = u(rng);
    const auto expect = oracle::conjugated({0, 1, 1, 0}, g);
    const auto got = swap_components(gv(g)).data();
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(got[k], expect[k], 1e-14);
}

TEST(Pair, FormNamesRoundTrip) {
    for (auto f : kAllForms) EXPECT_EQ(parse_form(to_string(f)), f);
    EXPECT_THROW(parse_form("C4"), std::invalid_argument);
    EXPECT_TRUE(is_commutative_form(StandardForm::C2));
    EXPECT_FALSE(is_commutative_form(StandardForm::N1));
}

TEST(Sampling, StreamsAreDeterministicAndIndependentOfOrder) {
    auto a = task_stream(7, "alpha");
    auto b = task_stream(7, "beta");
    auto a2 = task_stream(7, "alpha");
    EXPECT_EQ(a(), a2());
    EXPECT_NE(task_stream(7, "alpha")(), b());
    EXPECT_NE(task_stream(8, "alpha")(), task_stream(7, "alpha")());
}

TEST(Associativity, StandardFormsAreAssociative) {
    for (auto f : kAllForms) {
        EXPECT_TRUE(is_associative(gamma_of(f))) << to_string(f);
        for (double r : associativity_residuals(gamma_of(f))) EXPECT_EQ(r, 0.0);
    }
}

TEST(Associativity, ResidualTestAgreesWithAssociator) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2, 2);
    int assoc = 0;
    for (int i = 0; i < 2000; ++i) {
        oracle::G g;
        switch (i % 4) {
            case 0: for (auto& x : g) x = u(rng); break;
            case 1: g = oracle::family_a(u(rng), u(rng), u(rng), u(rng)); break;
            case 2: g = oracle::family_b(u(rng), u(rng)); break;
            default: g = oracle::mirror(oracle::family_a(u(rng), u(rng), u(rng), u(rng))); break;
        }
        const bool by_samples = oracle::max_associator(g, rng, 20) < 1e-9;
        const bool by_residuals = is_associative(gv(g));
        EXPECT_EQ(by_samples, by_residuals) << i;
        assoc += by_residuals;
    }
    EXPECT_EQ(assoc, 1500);
}

TEST(Associativity, AssociatorOfGenericProductIsNonZero) {
    const GammaVector g({1, 2, 3, 4, 5, 6, 7, 8});
    EXPECT_GT(associator(g, {1, 0}, {0, 1}, {1, 1}).norm_inf(), 0.1);
    EXPECT_FALSE(is_associative(g));
}

TEST(Classify, FamilyDrawsRoundTrip) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 400; ++i) {
        oracle::G g;
        std::string want;
        switch (i % 4) {
            case 0: g = oracle::family_a(u(rng), u(rng), u(rng), u(rng)); want = "CommutativeA"; break;
            case 1: g = oracle::mirror(oracle::family_a(u(rng), u(rng), u(rng), u(rng))); want = "CommutativeA"; break;
            case 2: g = oracle::family_b(u(rng), u(rng)); want = "NonCommutativeB"; break;
            default: g = oracle::family_c(u(rng), u(rng)); want = "NonCommutativeC"; break;
        }
        const auto c = classify(gv(g));
        ASSERT_TRUE(c.associative());
        EXPECT_EQ(family_name(c.family), want);
        const auto back = reconstruct(c.family).data();
        for (int k = 0; k < 8; ++k) EXPECT_NEAR(back[k], g[k], 1e-9);
    }
}

TEST(Classify, MuSeparatesTheCommutativeForms) {
    EXPECT_EQ(mu_of(classify(gamma_of(StandardForm::C1))), -1);
    EXPECT_EQ(mu_of(classify(gamma_of(StandardForm::C2))), 0);
    EXPECT_EQ(mu_of(classify(gamma_of(StandardForm::C3))), 1);
    EXPECT_EQ(mu_of(classify(gamma_of(StandardForm::N1))), std::nullopt);
}

TEST(Classify, NonAssociativeReportsResiduals) {
    const auto c = classify(GammaVector({1, 2, 3, 4, 5, 6, 7, 8}));
    ASSERT_FALSE(c.associative());
    const auto& r = std::get<NotAssociative>(c.family).residuals;
    double worst = 0;
    for (double x : r) worst = std::max(worst, std::abs(x));
    EXPECT_GT(worst, 1);
    EXPECT_THROW(reconstruct(c.family), std::invalid_argument);
}

TEST(Classify, ZeroProductIsDegenerate) {
    const auto c = classify(GammaVector{});
    EXPECT_EQ(family_name(c.family), "DegenerateLimit");
}

TEST(Classify, FlagsBorderlineInputs) {
    auto g = oracle::family_a(1, 0.5, 0.3, 0.2);
    g[3] += 1e-8;  // just above the default tolerance
    const auto c = classify(gv(g));
    EXPECT_FALSE(c.associative());
    EXPECT_TRUE(c.borderline);
}
