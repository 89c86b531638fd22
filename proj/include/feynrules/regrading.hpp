#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "feynrules/associativity.hpp"
#include "feynrules/pair.hpp"

namespace feynrules {

// Invertible linear change of components [[S, T], [U, V]].
class Regrading {
public:
    // Throws SingularTransform when |SV - TU| <= tol * max(1, |M|)^2.
    Regrading(double s, double t, double u, double v, double tol = 1e-12);
    static std::optional<Regrading> try_make(double s, double t, double u, double v, double tol = 1e-12);
    static Regrading identity() { return Regrading(1, 0, 0, 1); }

    double s() const noexcept { return s_; }
    double t() const noexcept { return t_; }
    double u() const noexcept { return u_; }
    double v() const noexcept { return v_; }
    double det() const noexcept { return s_ * v_ - t_ * u_; }
    double norm_inf() const noexcept;

    Pair apply(const Pair& a) const noexcept;
    Regrading inverse() const;
    Regrading operator*(const Regrading& rhs) const;  // (this * rhs)(a) = this(rhs(a))

    bool approx_equal(const Regrading& o, double tol) const noexcept;

private:
    double s_, t_, u_, v_;
};

// 8x8 coefficient map in closed form (rows g1'..g8', columns g1..g8),
// including the 1/(SV - TU) prefactor. [[S, T], [U, V]] is the inverse of the
// regrading being applied: transform_gamma(m, g) uses the entries of m^-1.
std::array<std::array<double, 8>, 8> coefficient_matrix(double s, double t, double u, double v);

// The g' with m(a *_g b) = m(a) *_g' m(b).
GammaVector transform_gamma(const Regrading& m, const GammaVector& g);

struct Reduced {
    StandardForm form;
    std::optional<int> mu;  // only for the commutative family
    Regrading map;
};
struct Inadmissible {
    std::string reason;
};
using ReductionResult = std::variant<Reduced, Inadmissible>;

ReductionResult reduce(const Classification& c);
ReductionResult reduce(const GammaVector& g, double tol = kDefaultTol);

}  // namespace feynrules
