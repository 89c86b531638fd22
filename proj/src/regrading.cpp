#include "feynrules/regrading.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "feynrules/errors.hpp"

namespace feynrules {

namespace {

const Regrading kSplitToProduct(1, -1, 1, 1);  // std(mu = +1) -> C3
const Regrading kSwap(0, 1, 1, 0);

double max_diff(const GammaVector& x, const GammaVector& y) {
    double m = 0;
    for (int k = 0; k < 8; ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return m;
}

std::optional<int> form_mu(StandardForm f) {
    switch (f) {
        case StandardForm::C1: return -1;
        case StandardForm::C2: return 0;
        case StandardForm::C3: return 1;
        default: return std::nullopt;
    }
}

ReductionResult checked(const Classification& c, StandardForm target, const Regrading& map) {
    const GammaVector got = transform_gamma(map, c.input);
    const double err = max_diff(got, gamma_of(target));
    const double scale = std::max({1.0, c.input.norm_inf(), map.norm_inf() * map.norm_inf()});
    if (err > std::max(c.tol, 1e-9) * scale * 1e3)
        throw InternalInconsistency("reduction map does not reach " + to_string(target) + " (error " +
                                    std::to_string(err) + ")");
    return Reduced{target, form_mu(target), map};
}

ReductionResult reduce_a(const Classification& c, const CommutativeA& a) {
    const double q = 4 * a.theta * a.phi + a.psi * a.psi;
    const double s = std::max(1.0, c.input.norm_inf());
    int mu = 0;
    if (std::abs(q) > c.tol * s * s) mu = q > 0 ? 1 : -1;
    const double delta = mu == 0 ? 1.0 : std::sqrt(std::abs(q));
    const double th = a.theta, ph = a.phi, ps = a.psi, ep = a.epsilon;
    auto r = Regrading::try_make(0.5 * (2 * th - ps * ep), 0.5 * (2 * ph * ep + ps), 0.5 * ep * delta, 0.5 * delta,
                                 c.tol);
    if (!r) return Inadmissible{"singular member of the commutative family: the product has rank one"};
    Regrading map = *r;
    if (a.mirrored) map = map * kSwap;
    if (mu == 1) map = kSplitToProduct * map;
    const StandardForm target = mu == -1 ? StandardForm::C1 : mu == 0 ? StandardForm::C2 : StandardForm::C3;
    return checked(c, target, map);
}

}  // namespace

Regrading::Regrading(double s, double t, double u, double v, double tol) : s_(s), t_(t), u_(u), v_(v) {
    for (double x : {s, t, u, v})
        if (!std::isfinite(x)) throw DomainError("regrading entry is not finite");
    const double n = std::max(1.0, norm_inf());
    if (std::abs(det()) <= tol * n * n) throw SingularTransform("regrading is singular (det " + std::to_string(det()) + ")");
}

std::optional<Regrading> Regrading::try_make(double s, double t, double u, double v, double tol) {
    try {
        return Regrading(s, t, u, v, tol);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

double Regrading::norm_inf() const noexcept {
    return std::max({std::abs(s_), std::abs(t_), std::abs(u_), std::abs(v_)});
}

Pair Regrading::apply(const Pair& a) const noexcept { return {s_ * a.c1() + t_ * a.c2(), u_ * a.c1() + v_ * a.c2()}; }

Regrading Regrading::inverse() const {
    const double d = det();
    return Regrading(v_ / d, -t_ / d, -u_ / d, s_ / d, 0.0);
}

Regrading Regrading::operator*(const Regrading& o) const {
    return Regrading(s_ * o.s_ + t_ * o.u_, s_ * o.t_ + t_ * o.v_, u_ * o.s_ + v_ * o.u_, u_ * o.t_ + v_ * o.v_, 0.0);
}

bool Regrading::approx_equal(const Regrading& o, double tol) const noexcept {
    return std::abs(s_ - o.s_) <= tol && std::abs(t_ - o.t_) <= tol && std::abs(u_ - o.u_) <= tol &&
           std::abs(v_ - o.v_) <= tol;
}

std::array<std::array<double, 8>, 8> coefficient_matrix(double S, double T, double U, double V) {
    const double d = S * V - T * U;
    if (d == 0) throw SingularTransform("coefficient matrix of a singular regrading");
    std::array<std::array<double, 8>, 8> m = {{
        {S * S * V, S * U * V, S * U * V, U * U * V, -S * S * T, -S * T * U, -S * T * U, -T * U * U},
        {S * T * V, S * V * V, T * U * V, U * V * V, -S * T * T, -S * T * V, -T * T * U, -T * U * V},
        {S * T * V, T * U * V, S * V * V, U * V * V, -S * T * T, -T * T * U, -S * T * V, -T * U * V},
        {T * T * V, T * V * V, T * V * V, V * V * V, -T * T * T, -T * T * V, -T * T * V, -T * V * V},
        {-S * S * U, -S * U * U, -S * U * U, -U * U * U, S * S * S, S * S * U, S * S * U, S * U * U},
        {-S * T * U, -S * U * V, -T * U * U, -U * U * V, S * S * T, S * S * V, S * T * U, S * U * V},
        {-S * T * U, -T * U * U, -S * U * V, -U * U * V, S * S * T, S * T * U, S * S * V, S * U * V},
        {-T * T * U, -T * U * V, -T * U * V, -U * V * V, S * T * T, S * T * V, S * T * V, S * V * V},
    }};
    for (auto& row : m)
        for (double& x : row) x /= d;
    return m;
}

GammaVector transform_gamma(const Regrading& m, const GammaVector& g) {
    // The closed-form matrix of (S, T, U, V) realises the inverse map, so it is
    // evaluated at m^-1.
    const Regrading inv = m.inverse();
    const auto p = coefficient_matrix(inv.s(), inv.t(), inv.u(), inv.v());
    std::array<double, 8> out{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out[i] += p[i][j] * g[j];
    return GammaVector(out);
}

ReductionResult reduce(const Classification& c) {
    if (!c.associative()) return Inadmissible{"product is not associative"};

    const double zero_tol = c.tol * std::max(1.0, c.input.norm_inf());
    for (auto f : kAllForms)
        if (max_diff(c.input, gamma_of(f)) <= zero_tol) return Reduced{f, form_mu(f), Regrading::identity()};

    if (auto* a = std::get_if<CommutativeA>(&c.family)) return reduce_a(c, *a);
    if (auto* b = std::get_if<NonCommutativeB>(&c.family)) {
        auto r = Regrading::try_make(b->theta, b->phi, -b->phi, b->theta, c.tol);
        if (!r) return Inadmissible{"vanishing parameters"};
        return checked(c, StandardForm::N2, *r);
    }
    if (auto* nc = std::get_if<NonCommutativeC>(&c.family)) {
        auto r = Regrading::try_make(nc->theta, nc->psi, -nc->psi, nc->theta, c.tol);
        if (!r) return Inadmissible{"vanishing parameters"};
        return checked(c, StandardForm::N1, *r);
    }
    return Inadmissible{"zero product"};
}

ReductionResult reduce(const GammaVector& g, double tol) { return reduce(classify(g, tol)); }

}  // namespace feynrules
