#pragma once

#include <array>
#include <string>
#include <string_view>

namespace feynrules {

// Two real components. Non-finite components are rejected on construction.
class Pair {
public:
    Pair() = default;
    Pair(double c1, double c2);

    double c1() const noexcept { return c1_; }
    double c2() const noexcept { return c2_; }
    double operator[](int i) const noexcept { return i == 0 ? c1_ : c2_; }

    double norm_inf() const noexcept;

    friend bool operator==(const Pair&, const Pair&) = default;

private:
    double c1_ = 0.0;
    double c2_ = 0.0;
};

Pair pair_add(const Pair& a, const Pair& b) noexcept;
Pair pair_sub(const Pair& a, const Pair& b) noexcept;
Pair pair_scale(double s, const Pair& a) noexcept;
Pair complex_mul(const Pair& a, const Pair& b) noexcept;

// Coefficients g[0..7] of a general bilinear product:
//   c1 = g0 a1b1 + g1 a1b2 + g2 a2b1 + g3 a2b2
//   c2 = g4 a1b1 + g5 a1b2 + g6 a2b1 + g7 a2b2
class GammaVector {
public:
    GammaVector() = default;
    explicit GammaVector(const std::array<double, 8>& g);

    double operator[](int k) const noexcept { return g_[static_cast<std::size_t>(k)]; }
    const std::array<double, 8>& data() const noexcept { return g_; }
    double norm_inf() const noexcept;

    friend bool operator==(const GammaVector&, const GammaVector&) = default;

private:
    std::array<double, 8> g_{};
};

Pair bilinear_mul(const GammaVector& g, const Pair& a, const Pair& b) noexcept;

// Swapping the two components maps gamma to this coefficient vector.
GammaVector swap_components(const GammaVector& g) noexcept;

enum class StandardForm { C1, C2, C3, N1, N2 };

inline constexpr std::array<StandardForm, 5> kAllForms = {
    StandardForm::C1, StandardForm::C2, StandardForm::C3, StandardForm::N1, StandardForm::N2};

GammaVector gamma_of(StandardForm f) noexcept;
std::string to_string(StandardForm f);
StandardForm parse_form(std::string_view name);  // throws std::invalid_argument
bool is_commutative_form(StandardForm f) noexcept;

}  // namespace feynrules
