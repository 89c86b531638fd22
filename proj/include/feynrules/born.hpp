#pragma once

#include <optional>
#include <string>

#include "feynrules/pair.hpp"

namespace feynrules {

// Probability as a function of a pair, for one standard product.
struct HFunction {
    StandardForm form = StandardForm::C1;
    double alpha = 2.0;
    std::optional<double> beta;  // used by C2 and C3 only
};

// Throws std::invalid_argument when beta is missing for C2/C3, given for the
// others, or an exponent is non-finite.
HFunction solve_h(StandardForm form, double alpha, std::optional<double> beta = std::nullopt);

std::string formula_id(StandardForm form);
std::string describe(const HFunction& h);

// Throws DomainError at singular points of the family.
double h_eval(const HFunction& h, const Pair& x);

// True iff h genuinely depends on both components.
bool admissible(const HFunction& h) noexcept;

// d with h(lambda x) = |lambda|^d h(x).
double homogeneity_degree(const HFunction& h) noexcept;

}  // namespace feynrules
