#include "feynrules/associativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "feynrules/errors.hpp"
#include "feynrules/sampling.hpp"

namespace feynrules {

namespace {

double scale1(const GammaVector& g) { return std::max(1.0, g.norm_inf()); }

double max_abs(const std::array<double, 12>& r) {
    double m = 0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m;
}

double max_diff(const GammaVector& x, const GammaVector& y) {
    double m = 0;
    for (int k = 0; k < 8; ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return m;
}

// Within a factor 1e3 of the threshold either way.
bool near_threshold(double value, double threshold) {
    return value > threshold * 1e-3 && value < threshold * 1e3;
}

GammaVector gamma_a(double theta, double phi, double psi, double eps) {
    return GammaVector({theta - psi * eps, phi * eps, phi * eps, phi, theta * eps, theta, theta, psi + phi * eps});
}

struct Candidate {
    Family family;
    double error;
    std::string label;
};

// Extraction of the commutative parameters. Falls through the three ways
// the template can be inverted depending on which of theta / phi vanish.
std::optional<CommutativeA> extract_a(const GammaVector& g, double zero_tol) {
    const double theta = 0.5 * (g[5] + g[6]);
    if (std::abs(theta) > zero_tol) {
        const double eps = g[4] / theta;
        const double phi = g[3];
        return CommutativeA{theta, phi, g[7] - phi * eps, eps, false};
    }
    if (std::abs(g[3]) > zero_tol) {
        const double phi = g[3];
        const double eps = 0.5 * (g[1] + g[2]) / phi;
        return CommutativeA{0.0, phi, g[7] - phi * eps, eps, false};
    }
    if (std::abs(g[7]) > zero_tol) return CommutativeA{0.0, 0.0, g[7], -g[0] / g[7], false};
    return std::nullopt;
}

std::string format_params(const Family& f) {
    std::ostringstream os;
    os.precision(6);
    if (auto* a = std::get_if<CommutativeA>(&f))
        os << "theta=" << a->theta << " phi=" << a->phi << " psi=" << a->psi << " eps=" << a->epsilon;
    else if (auto* b = std::get_if<NonCommutativeB>(&f))
        os << "theta=" << b->theta << " phi=" << b->phi;
    else if (auto* c = std::get_if<NonCommutativeC>(&f))
        os << "theta=" << c->theta << " psi=" << c->psi;
    return os.str();
}

}  // namespace

std::array<double, 12> associativity_residuals(const GammaVector& gv) noexcept {
    const double g1 = gv[0], g2 = gv[1], g3 = gv[2], g4 = gv[3];
    const double g5 = gv[4], g6 = gv[5], g7 = gv[6], g8 = gv[7];
    return {
        g2 * g6 - g4 * g5,
        g3 * g7 - g4 * g5,
        g4 * (g2 - g3),
        g4 * (g6 - g7),
        g5 * (g2 - g3),
        g5 * (g6 - g7),
        g2 * (g1 - g7) - g3 * (g1 - g6),
        g4 * (g1 - g7) - g3 * (g3 - g8),
        g7 * (g1 - g7) - g5 * (g3 - g8),
        g7 * (g2 - g8) - g6 * (g3 - g8),
        g5 * (g2 - g8) - g6 * (g1 - g6),
        g2 * (g2 - g8) - g4 * (g1 - g6),
    };
}

Pair associator(const GammaVector& g, const Pair& a, const Pair& b, const Pair& c) noexcept {
    return pair_sub(bilinear_mul(g, bilinear_mul(g, a, b), c), bilinear_mul(g, a, bilinear_mul(g, b, c)));
}

double sampled_associativity_defect(const GammaVector& g, std::mt19937_64& rng, int samples) {
    const double s2 = std::pow(scale1(g), 2);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        const Pair a(uniform(rng, -1, 1), uniform(rng, -1, 1));
        const Pair b(uniform(rng, -1, 1), uniform(rng, -1, 1));
        const Pair c(uniform(rng, -1, 1), uniform(rng, -1, 1));
        const double bound = 8.0 * a.norm_inf() * b.norm_inf() * c.norm_inf() * s2;
        if (bound == 0) continue;
        worst = std::max(worst, associator(g, a, b, c).norm_inf() / bound);
    }
    return worst;
}

bool is_associative(const GammaVector& g, double tol) {
    const double s = scale1(g);
    const bool poly = max_abs(associativity_residuals(g)) <= tol * s * s;
    if (!poly) return false;
    // Associative by the polynomial test: every sampled associator must then
    // respect the bound, up to rounding in the products themselves.
    auto rng = task_stream(0x5eed, "is_associative");
    const double defect = sampled_associativity_defect(g, rng, 64);
    const double slack = tol + 64 * std::numeric_limits<double>::epsilon();
    if (defect > slack)
        throw InternalInconsistency("polynomial test says associative but sampled associator defect is " +
                                    std::to_string(defect));
    return true;
}

Classification classify(const GammaVector& g, double tol) {
    Classification out{g, NotAssociative{}, tol, false, {}};
    const double s = scale1(g);
    const auto res = associativity_residuals(g);
    const double worst = max_abs(res);
    const double threshold = tol * s * s;
    if (near_threshold(worst, threshold)) {
        out.borderline = true;
        out.notes.push_back("associativity residual " + std::to_string(worst) + " is near the threshold");
    }
    if (worst > threshold) {
        out.family = NotAssociative{res};
        return out;
    }

    const double zero_tol = tol * s;
    if (g.norm_inf() <= zero_tol) {
        out.family = DegenerateLimit{0, g};
        out.notes.push_back("zero product");
        return out;
    }

    std::vector<Candidate> fits;
    auto consider = [&](Family f, const GammaVector& rebuilt, std::string label) {
        const double err = max_diff(rebuilt, g);
        if (near_threshold(err, zero_tol)) out.borderline = true;
        fits.push_back({std::move(f), err, std::move(label)});
    };
    if (auto a = extract_a(g, zero_tol)) consider(*a, reconstruct(*a), "family A");
    if (auto a = extract_a(swap_components(g), zero_tol)) {
        a->mirrored = true;
        consider(*a, reconstruct(*a), "mirrored family A");
    }
    const NonCommutativeB b{0.5 * (g[0] + g[6]), 0.5 * (g[1] + g[7])};
    consider(b, reconstruct(b), "family B");
    const NonCommutativeC c{0.5 * (g[0] + g[5]), 0.5 * (g[2] + g[7])};
    consider(c, reconstruct(c), "family C");

    // Candidates are in priority order; the first within tolerance wins.
    const Candidate* chosen = nullptr;
    const Candidate* best = &fits.front();
    for (const auto& f : fits) {
        if (f.error < best->error) best = &f;
        if (f.error <= zero_tol) {
            if (!chosen)
                chosen = &f;
            else
                out.notes.push_back("also fits " + f.label + " (" + format_params(f.family) + ")");
        }
    }
    if (!chosen) {
        if (best->error > 1e3 * zero_tol)
            throw InternalInconsistency("associative by the residual test but no family reconstructs gamma (best " +
                                        best->label + ", error " + std::to_string(best->error) + ")");
        chosen = best;
        out.borderline = true;
        out.notes.push_back("nearest family " + best->label + " reconstructs with error " +
                            std::to_string(best->error));
    }
    out.family = chosen->family;
    return out;
}

GammaVector reconstruct(const Family& f) {
    if (auto* a = std::get_if<CommutativeA>(&f)) {
        const GammaVector g = gamma_a(a->theta, a->phi, a->psi, a->epsilon);
        return a->mirrored ? swap_components(g) : g;
    }
    if (auto* b = std::get_if<NonCommutativeB>(&f))
        return GammaVector({b->theta, b->phi, 0, 0, 0, 0, b->theta, b->phi});
    if (auto* c = std::get_if<NonCommutativeC>(&f))
        return GammaVector({c->theta, 0, c->psi, 0, 0, c->theta, 0, c->psi});
    if (auto* d = std::get_if<DegenerateLimit>(&f)) return d->gamma;
    throw std::invalid_argument("a non-associative classification has no family coefficients");
}

std::string family_name(const Family& f) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CommutativeA>) return "CommutativeA";
            else if constexpr (std::is_same_v<T, NonCommutativeB>) return "NonCommutativeB";
            else if constexpr (std::is_same_v<T, NonCommutativeC>) return "NonCommutativeC";
            else if constexpr (std::is_same_v<T, DegenerateLimit>) return "DegenerateLimit";
            else return "NotAssociative";
        },
        f);
}

std::optional<int> mu_of(const Classification& c) {
    const auto* a = std::get_if<CommutativeA>(&c.family);
    if (!a) return std::nullopt;
    const double q = 4 * a->theta * a->phi + a->psi * a->psi;
    const double s = std::max(1.0, c.input.norm_inf());
    if (std::abs(q) <= c.tol * s * s) return 0;
    return q > 0 ? 1 : -1;
}

}  // namespace feynrules
