#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "feynrules/born.hpp"
#include "feynrules/pair.hpp"

namespace feynrules {

// Linear map on pairs, [[r1, r2], [r3, r4]].
struct ReciprocityOp {
    double r1 = 0, r2 = 0, r3 = 0, r4 = 0;

    Pair apply(const Pair& a) const;
    double det() const noexcept { return r1 * r4 - r2 * r3; }
    bool invertible(double tol = 1e-9) const noexcept;
    bool is_zero() const noexcept { return r1 == 0 && r2 == 0 && r3 == 0 && r4 == 0; }
    double distance(const ReciprocityOp& o) const noexcept;  // max-norm
    // "identity", "conjugation", "swap", "projection" or empty.
    std::string name() const;

    static ReciprocityOp identity() { return {1, 0, 0, 1}; }
    static ReciprocityOp conjugation() { return {1, 0, 0, -1}; }
    static ReciprocityOp swap() { return {0, 1, 1, 0}; }
    static ReciprocityOp projection() { return {1, 0, 0, 0}; }
    static ReciprocityOp by_name(const std::string& name);  // throws std::invalid_argument

    friend bool operator==(const ReciprocityOp&, const ReciprocityOp&) = default;
};

// R(a * b) - R(b) * R(a)
Pair antihom_residual(const ReciprocityOp& r, const GammaVector& g, const Pair& a, const Pair& b);

struct OperatorFamily {
    ReciprocityOp base;
    std::vector<ReciprocityOp> directions;

    ReciprocityOp member(const std::vector<double>& t) const;
    double distance(const ReciprocityOp& r) const;  // Euclidean, to the affine set
};

// Every non-zero real solution of the anti-homomorphism condition: isolated
// operators plus affine families (the zero map is dropped).
struct ReciprocitySolutions {
    std::vector<ReciprocityOp> isolated;
    std::vector<OperatorFamily> families;

    bool contains(const ReciprocityOp& r, double tol = 1e-12) const;
    double distance(const ReciprocityOp& r) const;  // to the nearest solution, zero map included
};

ReciprocitySolutions solve_reciprocity(const GammaVector& g);
ReciprocitySolutions solve_reciprocity(StandardForm form);

// c = (a * R(a)) + (b * R(b))
Pair repeated_measurement_pair(const Pair& a, const Pair& b, const ReciprocityOp& r, const GammaVector& g);

// ---- elimination ---------------------------------------------------------

struct Exponent {
    double alpha = 0;
    std::optional<double> beta;
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

struct Accepted {
    Exponent exponent;
    std::vector<Exponent> alternatives;  // further admissible survivors, if any
};
struct RejectedNonInvertible {
    double det = 0;
};
struct RejectedCounterexample {
    Pair a, b;
    double lhs = 0;  // h(a) + h(b)
    double rhs = 0;  // h(c)
    Exponent exponent;
    std::string construction;
    int exponents_refuted = 0;
};
struct RejectedInadmissibleExponents {
    std::vector<Exponent> surviving;
    std::string detail;
};
// The admissible survivors assign different probabilities to a pair and to
// its reciprocal image.
struct RejectedAsymmetricProbability {
    Pair a;
    double p_a = 0, p_ra = 0;
    Exponent exponent;
    std::vector<Exponent> surviving;
};
struct RejectedNotAdmissibleForm {
    std::string detail;
};

using Verdict = std::variant<Accepted, RejectedNonInvertible, RejectedCounterexample, RejectedInadmissibleExponents,
                             RejectedAsymmetricProbability, RejectedNotAdmissibleForm>;

std::string verdict_kind(const Verdict& v);
bool is_accepted(const Verdict& v) noexcept;

struct EliminationConfig {
    double tol = 1e-9;
    std::uint64_t seed = 7;
    int samples = 2000;  // random candidate pairs per exponent
};

// Exponent grid searched for a form: alpha (and beta) in [0, 4] step 1/4;
// C2 beta in [-4, 4] step 1/2.
std::vector<Exponent> exponent_grid(StandardForm form);

// Rebuilds c from (a, b) and checks h(a) + h(b) = 1 within 1e-9 and
// |h(c) - 1| > 0.1.
bool certificate_valid(StandardForm form, const ReciprocityOp& r, const RejectedCounterexample& cert);

// Witness family a = (s, 0), b = (0, q) normalised to h(a) + h(b) = 1 for C1
// with conjugation; returns max |h(c) - 1| over an s-grid. Throws DomainError
// for alpha <= 0.
double conjugation_witness_residual(double alpha);

// Closed-form exponents from the witness families (C1 conjugation, C3 identity).
std::vector<Exponent> witness_exponents(StandardForm form, const ReciprocityOp& r);

Verdict eliminate(StandardForm form, const ReciprocityOp& r, const EliminationConfig& cfg = {});

struct EliminationCell {
    StandardForm form;
    std::optional<ReciprocityOp> op;  // empty for forms rejected before any operator
    std::string op_label;
    bool expected_cell = false;           // part of the expected table
    std::optional<std::string> expected;  // expected verdict kind
    Verdict verdict;
    bool matches = true;
};

struct DerivationReport {
    EliminationConfig config;
    std::vector<EliminationCell> cells;
    int acceptances = 0;
    bool table_matches = true;
    std::vector<std::string> notes;
};

DerivationReport run_full_elimination(const EliminationConfig& cfg = {});

}  // namespace feynrules
