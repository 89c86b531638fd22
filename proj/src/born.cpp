#include "feynrules/born.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "feynrules/errors.hpp"

namespace feynrules {

namespace {

bool uses_beta(StandardForm f) { return f == StandardForm::C2 || f == StandardForm::C3; }

// |x|^p with the singular case reported instead of returning inf.
double power(double x, double p) {
    if (x == 0 && p < 0) throw DomainError("zero component raised to a negative power");
    if (p == 0) return 1.0;
    return std::pow(std::abs(x), p);
}

}  // namespace

HFunction solve_h(StandardForm form, double alpha, std::optional<double> beta) {
    if (!std::isfinite(alpha) || (beta && !std::isfinite(*beta))) throw std::invalid_argument("exponent is not finite");
    if (uses_beta(form) && !beta) throw std::invalid_argument(to_string(form) + " needs a second exponent beta");
    if (!uses_beta(form) && beta) throw std::invalid_argument(to_string(form) + " takes a single exponent");
    return HFunction{form, alpha, beta};
}

std::string formula_id(StandardForm form) {
    switch (form) {
        case StandardForm::C1: return "radial-power";
        case StandardForm::C2: return "power-exponential-ratio";
        case StandardForm::C3: return "product-of-powers";
        case StandardForm::N1:
        case StandardForm::N2: return "first-component-power";
    }
    return "?";
}

std::string describe(const HFunction& h) {
    std::ostringstream os;
    os.precision(17);
    switch (h.form) {
        case StandardForm::C1: os << "(x1^2 + x2^2)^(" << h.alpha << "/2)"; break;
        case StandardForm::C2: os << "|x1|^" << h.alpha << " * exp(" << *h.beta << " * x2/x1)"; break;
        case StandardForm::C3: os << "|x1|^" << h.alpha << " * |x2|^" << *h.beta; break;
        default: os << "|x1|^" << h.alpha; break;
    }
    return os.str();
}

double h_eval(const HFunction& h, const Pair& x) {
    switch (h.form) {
        case StandardForm::C1: {
            const double r2 = x.c1() * x.c1() + x.c2() * x.c2();
            if (r2 == 0 && h.alpha < 0) throw DomainError("radial power of the zero pair with negative exponent");
            if (h.alpha == 0) return 1.0;
            return std::pow(r2, 0.5 * h.alpha);
        }
        case StandardForm::C2: {
            if (x.c1() == 0) throw DomainError("first component is zero");
            return power(x.c1(), h.alpha) * std::exp(*h.beta * x.c2() / x.c1());
        }
        case StandardForm::C3: return power(x.c1(), h.alpha) * power(x.c2(), *h.beta);
        case StandardForm::N1:
        case StandardForm::N2: return power(x.c1(), h.alpha);
    }
    return 0;
}

bool admissible(const HFunction& h) noexcept {
    switch (h.form) {
        case StandardForm::C1: return h.alpha != 0;
        case StandardForm::C2: return h.beta && *h.beta != 0;
        case StandardForm::C3: return h.beta && h.alpha != 0 && *h.beta != 0;
        default: return false;
    }
}

double homogeneity_degree(const HFunction& h) noexcept {
    if (h.form == StandardForm::C3) return h.alpha + h.beta.value_or(0.0);
    return h.alpha;
}

}  // namespace feynrules
