#include "feynrules/pair.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "feynrules/errors.hpp"

namespace feynrules {

Pair::Pair(double c1, double c2) : c1_(c1), c2_(c2) {
    if (!std::isfinite(c1) || !std::isfinite(c2)) throw DomainError("pair component is not finite");
}

double Pair::norm_inf() const noexcept { return std::max(std::abs(c1_), std::abs(c2_)); }

Pair pair_add(const Pair& a, const Pair& b) noexcept { return {a.c1() + b.c1(), a.c2() + b.c2()}; }
Pair pair_sub(const Pair& a, const Pair& b) noexcept { return {a.c1() - b.c1(), a.c2() - b.c2()}; }
Pair pair_scale(double s, const Pair& a) noexcept { return {s * a.c1(), s * a.c2()}; }

Pair complex_mul(const Pair& a, const Pair& b) noexcept {
    return {a.c1() * b.c1() - a.c2() * b.c2(), a.c1() * b.c2() + a.c2() * b.c1()};
}

GammaVector::GammaVector(const std::array<double, 8>& g) : g_(g) {
    for (double x : g_)
        if (!std::isfinite(x)) throw DomainError("gamma coefficient is not finite");
}

double GammaVector::norm_inf() const noexcept {
    double m = 0;
    for (double x : g_) m = std::max(m, std::abs(x));
    return m;
}

Pair bilinear_mul(const GammaVector& g, const Pair& a, const Pair& b) noexcept {
    const double p11 = a.c1() * b.c1(), p12 = a.c1() * b.c2(), p21 = a.c2() * b.c1(), p22 = a.c2() * b.c2();
    return {g[0] * p11 + g[1] * p12 + g[2] * p21 + g[3] * p22, g[4] * p11 + g[5] * p12 + g[6] * p21 + g[7] * p22};
}

GammaVector swap_components(const GammaVector& g) noexcept {
    const auto& d = g.data();
    return GammaVector({d[7], d[6], d[5], d[4], d[3], d[2], d[1], d[0]});
}

GammaVector gamma_of(StandardForm f) noexcept {
    switch (f) {
        case StandardForm::C1: return GammaVector({1, 0, 0, -1, 0, 1, 1, 0});
        case StandardForm::C2: return GammaVector({1, 0, 0, 0, 0, 1, 1, 0});
        case StandardForm::C3: return GammaVector({1, 0, 0, 0, 0, 0, 0, 1});
        case StandardForm::N1: return GammaVector({1, 0, 0, 0, 0, 1, 0, 0});
        case StandardForm::N2: return GammaVector({1, 0, 0, 0, 0, 0, 1, 0});
    }
    return {};
}

std::string to_string(StandardForm f) {
    switch (f) {
        case StandardForm::C1: return "C1";
        case StandardForm::C2: return "C2";
        case StandardForm::C3: return "C3";
        case StandardForm::N1: return "N1";
        case StandardForm::N2: return "N2";
    }
    return "?";
}

StandardForm parse_form(std::string_view name) {
    for (auto f : kAllForms)
        if (to_string(f) == name) return f;
    throw std::invalid_argument("unknown standard form '" + std::string(name) + "'");
}

bool is_commutative_form(StandardForm f) noexcept {
    return f == StandardForm::C1 || f == StandardForm::C2 || f == StandardForm::C3;
}

}  // namespace feynrules
