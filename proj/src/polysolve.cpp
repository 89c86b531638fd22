#include "feynrules/polysolve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <set>
#include <sstream>

namespace feynrules::exact {

namespace {

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = std::max(a[i], b[i]);
    return e;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
    Exponents e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] - b[i];
    return e;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

Polynomial times_term(const Polynomial& p, const Exponents& e, const Rational& c) {
    Polynomial out(p.nvars());
    for (const auto& [pe, pc] : p.terms()) {
        Exponents s(pe.size());
        for (std::size_t i = 0; i < pe.size(); ++i) s[i] = pe[i] + e[i];
        out.add_term(s, pc * c);
    }
    return out;
}

Polynomial reduce_full(Polynomial p, const std::vector<Polynomial>& basis) {
    Polynomial rest(p.nvars());
    while (!p.is_zero()) {
        const Exponents lm = p.leading_exponents();
        const Rational lc = p.leading_coefficient();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero() || !divides(g.leading_exponents(), lm)) continue;
            p = p - times_term(g, quotient(lm, g.leading_exponents()), lc / g.leading_coefficient());
            reduced = true;
            break;
        }
        if (!reduced) {
            rest.add_term(lm, lc);
            Polynomial head(p.nvars());
            head.add_term(lm, lc);
            p = p - head;
        }
    }
    return rest;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const Exponents l = lcm(f.leading_exponents(), g.leading_exponents());
    return times_term(f, quotient(l, f.leading_exponents()), Rational(1) / f.leading_coefficient()) -
           times_term(g, quotient(l, g.leading_exponents()), Rational(1) / g.leading_coefficient());
}

// Univariate coefficient helpers, constant term first.
void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
    Rational v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<Rational> remainder(std::vector<Rational> a, const std::vector<Rational>& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    if (n > Integer(1000000000000LL)) throw Unsupported("root search coefficient too large");
    std::vector<Integer> d;
    for (Integer k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            d.push_back(k);
            if (k * k != n) d.push_back(n / k);
        }
    return d;
}

std::optional<std::vector<Rational>> univariate_in(const Polynomial& p, int var) {
    std::vector<Rational> c;
    for (const auto& [e, coef] : p.terms()) {
        for (int i = 0; i < p.nvars(); ++i)
            if (i != var && e[i] != 0) return std::nullopt;
        const auto k = static_cast<std::size_t>(e[var]);
        if (c.size() <= k) c.resize(k + 1);
        c[k] = coef;
    }
    return c;
}

using Assignment = std::vector<std::optional<Rational>>;

AffineSolution free_solution(const Assignment& fixed, const std::vector<int>& free_vars) {
    const std::size_t n = fixed.size();
    AffineSolution s;
    s.base.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        if (fixed[i]) s.base[i] = *fixed[i];
    for (int v : free_vars) {
        std::vector<Rational> d(n, Rational(0));
        d[static_cast<std::size_t>(v)] = 1;
        s.directions.push_back(std::move(d));
    }
    return s;
}

// Reduced linear basis: each element is x_pivot + sum c_j x_j + c0.
AffineSolution linear_solution(const std::vector<Polynomial>& basis, const Assignment& fixed,
                               const std::vector<int>& remaining) {
    std::set<int> pivots;
    for (const auto& g : basis) {
        const auto& lm = g.leading_exponents();
        pivots.insert(static_cast<int>(std::find(lm.begin(), lm.end(), 1) - lm.begin()));
    }
    std::vector<int> free_vars;
    for (int v : remaining)
        if (!pivots.count(v)) free_vars.push_back(v);
    AffineSolution s = free_solution(fixed, free_vars);
    for (const auto& g : basis) {
        const auto& lm = g.leading_exponents();
        const auto p = static_cast<std::size_t>(std::find(lm.begin(), lm.end(), 1) - lm.begin());
        for (const auto& [e, c] : g.terms()) {
            if (e == lm) continue;
            const auto it = std::find(e.begin(), e.end(), 1);
            if (it == e.end()) {
                s.base[p] = -c;
                continue;
            }
            const int v = static_cast<int>(it - e.begin());
            const auto k = std::find(free_vars.begin(), free_vars.end(), v) - free_vars.begin();
            s.directions[static_cast<std::size_t>(k)][p] = -c;
        }
    }
    return s;
}

std::vector<AffineSolution> solve_rec(std::vector<Polynomial> polys, std::vector<int> remaining, Assignment fixed) {
    std::vector<Polynomial> live;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return {};
        live.push_back(std::move(p));
    }
    if (live.empty()) return {free_solution(fixed, remaining)};

    const int n = live.front().nvars();
    for (int x : remaining) {
        // Order the variables so that x is the smallest in lex.
        std::vector<int> perm(static_cast<std::size_t>(n));
        int pos = 0;
        for (int v = 0; v < n; ++v)
            if (v != x) perm[static_cast<std::size_t>(v)] = pos++;
        perm[static_cast<std::size_t>(x)] = n - 1;
        std::vector<Polynomial> permuted;
        for (const auto& p : live) permuted.push_back(p.permuted(perm));
        const auto basis = groebner_basis(permuted);
        if (basis.size() == 1 && basis.front().is_constant()) return {};
        for (const auto& g : basis) {
            auto coeffs = univariate_in(g, n - 1);
            if (!coeffs) continue;
            const auto roots = rational_roots(*coeffs);
            if (count_real_roots(*coeffs) > static_cast<int>(roots.size()))
                throw Unsupported("a coordinate takes an irrational value: " + g.to_string());
            std::vector<int> rest;
            for (int v : remaining)
                if (v != x) rest.push_back(v);
            std::vector<AffineSolution> out;
            for (const auto& r : roots) {
                std::vector<Polynomial> sub;
                for (const auto& p : live) sub.push_back(p.substitute(x, r));
                Assignment next = fixed;
                next[static_cast<std::size_t>(x)] = r;
                auto part = solve_rec(std::move(sub), rest, std::move(next));
                out.insert(out.end(), part.begin(), part.end());
            }
            return out;
        }
    }

    const auto basis = groebner_basis(live);
    for (const auto& g : basis)
        if (g.total_degree() > 1) throw Unsupported("non-linear solution component: " + g.to_string());
    return {linear_solution(basis, fixed, remaining)};
}

}  // namespace

Rational to_rational(double x) {
    if (!std::isfinite(x)) throw std::domain_error("cannot convert a non-finite value");
    if (x == 0) return Rational(0);
    int e = 0;
    const double m = std::frexp(x, &e);
    const auto mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r{Integer(mant)};
    const Integer two_pow = boost::multiprecision::pow(Integer(2), static_cast<unsigned>(std::abs(e)));
    return e >= 0 ? Rational(r * two_pow) : Rational(r / two_pow);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    Polynomial p(nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, Rational(1));
    return p;
}

bool Polynomial::is_constant() const noexcept {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

int Polynomial::total_degree() const noexcept {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

std::vector<int> Polynomial::variables() const {
    std::vector<int> v;
    for (int i = 0; i < nvars_; ++i)
        for (const auto& [e, c] : terms_)
            if (e[static_cast<std::size_t>(i)] != 0) {
                v.push_back(i);
                break;
            }
    return v;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : o.terms_) r = r + times_term(*this, e, c);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    return times_term(*this, Exponents(static_cast<std::size_t>(nvars_), 0), c);
}

Polynomial Polynomial::monic() const { return is_zero() ? *this : scaled(Rational(1) / leading_coefficient()); }

Polynomial Polynomial::substitute(int index, const Rational& value) const {
    Polynomial r(nvars_);
    for (const auto& [key, c] : terms_) {
        Exponents e = key;
        auto& k = e[static_cast<std::size_t>(index)];
        Rational f = 1;
        for (int i = 0; i < k; ++i) f *= value;
        k = 0;
        r.add_term(e, c * f);
    }
    return r;
}

Polynomial Polynomial::permuted(const std::vector<int>& perm) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents p(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) p[static_cast<std::size_t>(perm[i])] = e[i];
        r.add_term(p, c);
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        sum += t;
    }
    return sum;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const Rational mag = c < 0 ? Rational(-c) : c;
        bool unit = mag == 1;
        bool has_var = false;
        for (int k : e) has_var = has_var || k > 0;
        if (!unit || !has_var) os << mag;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "x" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators) {
    std::vector<Polynomial> g;
    for (const auto& p : generators) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return {Polynomial::constant(p.nvars(), 1)};
        g.push_back(p.monic());
    }
    if (g.empty()) return g;
    const int n = g.front().nvars();

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        const auto [i, j] = pairs.front();
        pairs.pop_front();
        if (coprime(g[i].leading_exponents(), g[j].leading_exponents())) continue;
        Polynomial r = reduce_full(s_polynomial(g[i], g[j]), g);
        if (r.is_zero()) continue;
        if (r.is_constant()) return {Polynomial::constant(n, 1)};
        for (std::size_t k = 0; k < g.size(); ++k) pairs.emplace_back(k, g.size());
        g.push_back(r.monic());
    }

    // Minimal basis, then inter-reduce.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j || !divides(g[j].leading_exponents(), g[i].leading_exponents())) continue;
            redundant = g[j].leading_exponents() != g[i].leading_exponents() || j < i;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = reduce_full(minimal[i], others).monic();
    }
    std::sort(minimal.begin(), minimal.end(), [](const Polynomial& a, const Polynomial& b) {
        return std::greater<>()(a.leading_exponents(), b.leading_exponents());
    });
    return minimal;
}

std::vector<Rational> rational_roots(std::vector<Rational> c) {
    trim(c);
    if (c.empty()) throw std::invalid_argument("zero polynomial has no finite root set");
    std::vector<Rational> roots;
    if (c.front() == 0) {
        roots.emplace_back(0);
        while (!c.empty() && c.front() == 0) c.erase(c.begin());
    }
    if (c.size() > 1) {
        Integer den = 1;
        for (const auto& q : c) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(q));
        const Integer a0 = boost::multiprecision::numerator(Rational(c.front() * den));
        const Integer an = boost::multiprecision::numerator(Rational(c.back() * den));
        for (const auto& p : divisors(a0))
            for (const auto& q : divisors(an))
                for (int s : {1, -1}) {
                    const Rational x = Rational(p * s, q);
                    if (horner(c, x) == 0) roots.push_back(x);
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

int count_real_roots(const std::vector<Rational>& coeffs) {
    std::vector<Rational> p = coeffs;
    trim(p);
    if (p.size() <= 1) return 0;
    std::vector<std::vector<Rational>> chain{p};
    std::vector<Rational> d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<int>(k));
    trim(d);
    while (!d.empty()) {
        chain.push_back(d);
        auto r = remainder(chain[chain.size() - 2], chain.back());
        for (auto& x : r) x = -x;
        d = std::move(r);
    }
    auto variations = [&](bool at_plus) {
        int count = 0, last = 0;
        for (const auto& q : chain) {
            int s = sign(q.back());
            if (!at_plus && (q.size() - 1) % 2 == 1) s = -s;
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    return variations(false) - variations(true);
}

std::vector<AffineSolution> solve_real(const std::vector<Polynomial>& system) {
    if (system.empty()) return {};
    const int n = system.front().nvars();
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vars[static_cast<std::size_t>(i)] = i;
    return solve_rec(system, vars, Assignment(static_cast<std::size_t>(n)));
}

}  // namespace feynrules::exact
