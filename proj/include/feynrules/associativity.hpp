#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "feynrules/pair.hpp"

namespace feynrules {

inline constexpr double kDefaultTol = 1e-9;

// Twelve polynomial conditions; all vanish iff the product is associative.
std::array<double, 12> associativity_residuals(const GammaVector& g) noexcept;

// (a*b)*c - a*(b*c)
Pair associator(const GammaVector& g, const Pair& a, const Pair& b, const Pair& c) noexcept;

// Largest associator component over random triples, divided by the bound
// 8 |a| |b| |c| max(1, |g|^2) that the twelve residuals impose on it.
double sampled_associativity_defect(const GammaVector& g, std::mt19937_64& rng, int samples);

// Throws InternalInconsistency if the polynomial test and a sampled
// associator check disagree.
bool is_associative(const GammaVector& g, double tol = kDefaultTol);

struct CommutativeA {
    double theta = 0, phi = 0, psi = 0, epsilon = 0;
    // Parameters describe the component-swapped product.
    bool mirrored = false;
};
struct NonCommutativeB {
    double theta = 0, phi = 0;
};
struct NonCommutativeC {
    double theta = 0, psi = 0;
};
// Only the g1/g5 (D1), g1/g8 (D2) or g4/g8 (D3) slots are occupied.
struct DegenerateLimit {
    int subcase = 0;
    GammaVector gamma;
};
struct NotAssociative {
    std::array<double, 12> residuals{};
};

using Family = std::variant<CommutativeA, NonCommutativeB, NonCommutativeC, DegenerateLimit, NotAssociative>;

struct Classification {
    GammaVector input;
    Family family;
    double tol = kDefaultTol;
    bool borderline = false;
    std::vector<std::string> notes;

    bool associative() const noexcept { return !std::holds_alternative<NotAssociative>(family); }
};

Classification classify(const GammaVector& g, double tol = kDefaultTol);

// Coefficient vector described by a family; throws std::invalid_argument for NotAssociative.
GammaVector reconstruct(const Family& f);

std::string family_name(const Family& f);

// Sign of 4 theta phi + psi^2 for CommutativeA, nullopt otherwise.
std::optional<int> mu_of(const Classification& c);

}  // namespace feynrules
