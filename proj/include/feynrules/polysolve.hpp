#pragma once

// Exact arithmetic on small polynomial systems over the rationals: lex
// Groebner bases and real solution sets made of points and affine pieces.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace feynrules::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Exponents = std::vector<int>;

// Exact value of a finite double.
Rational to_rational(double x);
double to_double(const Rational& q);

class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexicographic order with x0 > x1 > ... ; the leading term is the first entry.
class Polynomial {
public:
    using Terms = std::map<Exponents, Rational, std::greater<>>;

    explicit Polynomial(int nvars) : nvars_(nvars) {}
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int index);

    int nvars() const noexcept { return nvars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    const Terms& terms() const noexcept { return terms_; }
    const Exponents& leading_exponents() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }
    int total_degree() const noexcept;
    std::vector<int> variables() const;

    void add_term(const Exponents& e, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial monic() const;

    Polynomial substitute(int index, const Rational& value) const;
    // Variable i of this polynomial becomes variable perm[i] of the result.
    Polynomial permuted(const std::vector<int>& perm) const;
    Rational evaluate(const std::vector<Rational>& x) const;

    std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    int nvars_;
    Terms terms_;
};

// Reduced lex Groebner basis (monic, sorted by leading term).
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators);

// Univariate helpers; coefficients ordered from the constant term up.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);
int count_real_roots(const std::vector<Rational>& coeffs);

// base + span(directions); every listed variable value is exact.
struct AffineSolution {
    std::vector<Rational> base;
    std::vector<std::vector<Rational>> directions;
};

// All real solutions. Throws Unsupported when a component is neither a point
// nor an affine subspace, or a coordinate takes an irrational value.
std::vector<AffineSolution> solve_real(const std::vector<Polynomial>& system);

}  // namespace feynrules::exact
