#pragma once

// Reference computations written directly from the defining formulas, kept
// apart from the library so the tests do not check code against itself.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using P = std::array<double, 2>;
using G = std::array<double, 8>;
using M = std::array<double, 4>;  // [[m0, m1], [m2, m3]]
using Cx = std::complex<double>;

inline P mul(const G& g, const P& a, const P& b) {
    const double t[4] = {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
    P c{0, 0};
    for (int k = 0; k < 4; ++k) {
        c[0] += g[k] * t[k];
        c[1] += g[4 + k] * t[k];
    }
    return c;
}

inline P act(const M& m, const P& a) { return {m[0] * a[0] + m[1] * a[1], m[2] * a[0] + m[3] * a[1]}; }

inline M inverse(const M& m) {
    const double d = m[0] * m[3] - m[1] * m[2];
    return {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
}

inline double dist(const P& a, const P& b) { return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

inline double norm(const P& a) { return std::max(std::abs(a[0]), std::abs(a[1])); }

// Coefficients of x *' y = m(m^-1 x * m^-1 y), read off from basis products.
inline G conjugated(const M& m, const G& g) {
    const M inv = inverse(m);
    const P e[2] = {{1, 0}, {0, 1}};
    G out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const P c = act(m, mul(g, act(inv, e[i]), act(inv, e[j])));
            out[2 * i + j] = c[0];
            out[4 + 2 * i + j] = c[1];
        }
    return out;
}

inline double max_associator(const G& g, std::mt19937_64& rng, int samples) {
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        const P a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        worst = std::max(worst, dist(mul(g, mul(g, a, b), c), mul(g, a, mul(g, b, c))));
    }
    return worst;
}

// Commutative family written out by hand.
inline G family_a(double th, double ph, double ps, double ep) {
    return {th - ps * ep, ph * ep, ph * ep, ph, th * ep, th, th, ps + ph * ep};
}

inline G family_b(double th, double ph) { return {th, ph, 0, 0, 0, 0, th, ph}; }

inline G family_c(double th, double ps) { return {th, 0, ps, 0, 0, th, 0, ps}; }

inline G mirror(const G& g) { return {g[7], g[6], g[5], g[4], g[3], g[2], g[1], g[0]}; }

// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
inline std::vector<std::vector<Cx>> random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<std::vector<Cx>> q(n, std::vector<Cx>(n));
    for (auto& row : q)
        for (auto& x : row) x = {nd(rng), nd(rng)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Cx dot = 0;
            for (int k = 0; k < n; ++k) dot += std::conj(q[j][k]) * q[i][k];
            for (int k = 0; k < n; ++k) q[i][k] -= dot * q[j][k];
        }
        double nrm = 0;
        for (int k = 0; k < n; ++k) nrm += std::norm(q[i][k]);
        nrm = std::sqrt(nrm);
        for (int k = 0; k < n; ++k) q[i][k] /= nrm;
    }
    return q;
}

}  // namespace oracle
