#include "feynrules/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "feynrules/born.hpp"
#include "feynrules/errors.hpp"
#include "feynrules/sampling.hpp"

namespace feynrules {

// ---- outcomes and sequences ----------------------------------------------------

Outcome::Outcome(std::vector<int> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
    if (labels_.empty()) throw SequenceError("outcome with no labels");
}

bool Outcome::disjoint(const Outcome& o) const {
    std::vector<int> common;
    std::set_intersection(labels_.begin(), labels_.end(), o.labels_.begin(), o.labels_.end(),
                          std::back_inserter(common));
    return common.empty();
}

bool Outcome::subset_of(const std::vector<int>& allowed) const {
    return std::all_of(labels_.begin(), labels_.end(), [&](int l) {
        return std::find(allowed.begin(), allowed.end(), l) != allowed.end();
    });
}

Outcome Outcome::united(const Outcome& o) const {
    std::vector<int> u;
    std::set_union(labels_.begin(), labels_.end(), o.labels_.begin(), o.labels_.end(), std::back_inserter(u));
    return Outcome(std::move(u));
}

std::string Outcome::to_string() const {
    if (atomic()) return std::to_string(labels_.front());
    std::string s = "{";
    for (std::size_t i = 0; i < labels_.size(); ++i) s += (i ? "," : "") + std::to_string(labels_[i]);
    return s + "}";
}

Sequence::Sequence(std::string setup_id, std::vector<Outcome> outcomes)
    : Sequence(std::vector<std::string>{std::move(setup_id)}, std::move(outcomes)) {}

Sequence::Sequence(std::vector<std::string> setup_chain, std::vector<Outcome> outcomes)
    : setup_(std::move(setup_chain)), outcomes_(std::move(outcomes)) {
    if (setup_.empty() || std::any_of(setup_.begin(), setup_.end(), [](const auto& s) { return s.empty(); }))
        throw SequenceError("sequence without a set-up id");
    if (outcomes_.size() < 2) throw SequenceError("a sequence needs at least two outcomes");
    if (!outcomes_.front().atomic() || !outcomes_.back().atomic())
        throw SequenceError("first and last outcomes must be atomic");
}

std::string Sequence::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < outcomes_.size(); ++i) s += (i ? "; " : "") + outcomes_[i].to_string();
    s += "]@";
    for (std::size_t i = 0; i < setup_.size(); ++i) s += (i ? "." : "") + setup_[i];
    return s;
}

namespace {

std::optional<std::size_t> single_difference(const Sequence& a, const Sequence& b) {
    if (a.setup() != b.setup() || a.size() != b.size()) return std::nullopt;
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.outcomes()[i] == b.outcomes()[i]) continue;
        if (at) return std::nullopt;
        at = i;
    }
    return at;
}

}  // namespace

bool parallel_combinable(const Sequence& a, const Sequence& b) {
    const auto k = single_difference(a, b);
    return k && *k > 0 && *k + 1 < a.size() && a.outcomes()[*k].disjoint(b.outcomes()[*k]);
}

Sequence parallel(const Sequence& a, const Sequence& b) {
    if (!parallel_combinable(a, b))
        throw SequenceError("not parallel-combinable: " + a.to_string() + " and " + b.to_string());
    const std::size_t k = *single_difference(a, b);
    auto out = a.outcomes();
    out[k] = out[k].united(b.outcomes()[k]);
    return Sequence(a.setup(), std::move(out));
}

bool series_combinable(const Sequence& a, const Sequence& b) { return a.outcomes().back() == b.outcomes().front(); }

Sequence series(const Sequence& a, const Sequence& b) {
    if (!series_combinable(a, b))
        throw SequenceError("not series-combinable: " + a.to_string() + " ends where " + b.to_string() +
                            " does not start");
    auto chain = a.setup();
    chain.insert(chain.end(), b.setup().begin(), b.setup().end());
    auto out = a.outcomes();
    out.insert(out.end(), b.outcomes().begin() + 1, b.outcomes().end());
    return Sequence(std::move(chain), std::move(out));
}

// ---- amplitudes -------------------------------------------------------------------

const Pair& IntervalTable::at(int from, int to) const {
    const auto it = entries.find({from, to});
    if (it == entries.end())
        throw MissingAmplitude("no amplitude for transition " + std::to_string(from) + " -> " + std::to_string(to));
    return it->second;
}

AmplitudeAssignment concat(const AmplitudeAssignment& first, const AmplitudeAssignment& second) {
    AmplitudeAssignment out = first;
    out.setup.insert(out.setup.end(), second.setup.begin(), second.setup.end());
    out.intervals.insert(out.intervals.end(), second.intervals.begin(), second.intervals.end());
    return out;
}

void validate(const Sequence& s, const Setup& setup) {
    if (s.setup() != std::vector<std::string>{setup.id})
        throw SequenceError("sequence " + s.to_string() + " does not belong to set-up " + setup.id);
    if (s.size() != setup.slots.size())
        throw SequenceError("sequence " + s.to_string() + " has " + std::to_string(s.size()) + " outcomes, set-up has " +
                            std::to_string(setup.slots.size()) + " slots");
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!s.outcomes()[i].subset_of(setup.slots[i]))
            throw SequenceError("outcome " + s.outcomes()[i].to_string() + " at slot " + std::to_string(i) +
                                " is not made of declared labels");
}

Pair amplitude(const Sequence& s, const AmplitudeAssignment& asg) {
    if (asg.setup != s.setup()) throw SequenceError("assignment does not match the set-up of " + s.to_string());
    if (asg.intervals.size() + 1 != s.size())
        throw SequenceError("assignment has " + std::to_string(asg.intervals.size()) + " intervals for a sequence of " +
                            std::to_string(s.size()) + " outcomes");
    // Transfer over slots: acc[j] sums every refinement ending in label j.
    std::vector<Pair> acc(s.outcomes().front().labels().size(), Pair(1, 0));
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        const auto& from = s.outcomes()[k].labels();
        const auto& to = s.outcomes()[k + 1].labels();
        std::vector<Pair> next(to.size());
        for (std::size_t j = 0; j < to.size(); ++j)
            for (std::size_t i = 0; i < from.size(); ++i)
                next[j] = pair_add(next[j], complex_mul(acc[i], asg.intervals[k].at(from[i], to[j])));
        acc = std::move(next);
    }
    Pair total;
    for (const auto& p : acc) total = pair_add(total, p);
    return total;
}

double probability(const Sequence& s, const AmplitudeAssignment& asg) {
    static const HFunction born = solve_h(StandardForm::C1, 2.0);
    return h_eval(born, amplitude(s, asg));
}

// ---- normalisation --------------------------------------------------------------

namespace {

AmplitudeAssignment assignment_for(const Setup& setup, const AmplitudeAssignment& asg) {
    if (asg.setup != std::vector<std::string>{setup.id})
        throw SequenceError("assignment does not belong to set-up " + setup.id);
    if (asg.intervals.size() + 1 != setup.slots.size())
        throw SequenceError("set-up " + setup.id + " needs " + std::to_string(setup.slots.size() - 1) + " interval tables");
    return asg;
}

// All sequences of the set-up that start at `start` with the given interior
// outcomes; the last slot is enumerated over its labels.
std::vector<Sequence> ending_variants(const Setup& setup, int start, const std::vector<Outcome>& interior) {
    std::vector<Sequence> out;
    for (int last : setup.slots.back()) {
        std::vector<Outcome> o{Outcome{start}};
        o.insert(o.end(), interior.begin(), interior.end());
        o.push_back(Outcome{last});
        out.emplace_back(setup.id, std::move(o));
    }
    return out;
}

void atomic_interiors(const Setup& setup, std::size_t slot, std::vector<Outcome>& cur,
                      std::vector<std::vector<Outcome>>& out) {
    if (slot + 1 >= setup.slots.size()) {
        out.push_back(cur);
        return;
    }
    for (int l : setup.slots[slot]) {
        cur.push_back(Outcome{l});
        atomic_interiors(setup, slot + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

NormalizationReport normalization_check(const Setup& setup, const AmplitudeAssignment& asg_in, double tol) {
    const auto asg = assignment_for(setup, asg_in);
    NormalizationReport rep;
    rep.preserving = true;
    for (std::size_t k = 0; k + 1 < setup.slots.size(); ++k) {
        IntervalCheck c;
        c.interval = k;
        auto from = setup.slots[k], to = setup.slots[k + 1];
        std::sort(from.begin(), from.end());
        std::sort(to.begin(), to.end());
        c.square = from == to;
        if (c.square) {
            const auto& t = asg.intervals[k];
            for (int i : from)
                for (int j : from) {
                    // (T T^H)_{ij} = sum_l T(i,l) conj(T(j,l))
                    double re = 0, im = 0;
                    for (int l : to) {
                        const Pair x = t.at(i, l), y = t.at(j, l);
                        re += x.c1() * y.c1() + x.c2() * y.c2();
                        im += x.c2() * y.c1() - x.c1() * y.c2();
                    }
                    c.unitarity_defect = std::max({c.unitarity_defect, std::abs(re - (i == j ? 1.0 : 0.0)), std::abs(im)});
                }
        }
        rep.preserving = rep.preserving && c.square && c.unitarity_defect <= tol * 10;
        rep.intervals.push_back(c);
    }

    std::vector<Outcome> coarse;
    for (std::size_t k = 1; k + 1 < setup.slots.size(); ++k) coarse.emplace_back(setup.slots[k]);
    std::vector<std::vector<Outcome>> atomic;
    std::vector<Outcome> cur;
    atomic_interiors(setup, 1, cur, atomic);

    for (int start : setup.slots.front()) {
        LabelTotal t;
        t.label = start;
        for (const auto& s : ending_variants(setup, start, coarse)) t.coarse_total += probability(s, asg);
        for (const auto& interior : atomic)
            for (const auto& s : ending_variants(setup, start, interior)) t.atomic_total += probability(s, asg);
        rep.max_total_error = std::max({rep.max_total_error, std::abs(t.coarse_total - 1), std::abs(t.atomic_total - 1)});
        rep.totals.push_back(t);
    }

    for (std::size_t k = 0; k + 1 < setup.slots.size(); ++k) {
        const auto [setup2, asg2] = interleave_trivial(setup, asg, k);
        for (int start : setup.slots.front()) {
            std::vector<Sequence> probes = ending_variants(setup, start, coarse);
            if (!atomic.empty()) {
                auto more = ending_variants(setup, start, atomic.front());
                probes.insert(probes.end(), more.begin(), more.end());
            }
            for (const auto& s : probes) {
                const double before = probability(s, asg);
                const double after = probability(interleave_trivial(s, setup, k), asg2);
                rep.max_interleave_change = std::max(rep.max_interleave_change, std::abs(after - before));
                ++rep.interleave_cases;
            }
        }
    }
    return rep;
}

namespace {
std::string interleaved_id(const Setup& setup, std::size_t k) { return setup.id + "~" + std::to_string(k); }
}  // namespace

std::pair<Setup, AmplitudeAssignment> interleave_trivial(const Setup& setup, const AmplitudeAssignment& asg,
                                                         std::size_t k) {
    if (k + 1 >= setup.slots.size()) throw SequenceError("no interval after slot " + std::to_string(k));
    Setup s = setup;
    s.id = interleaved_id(setup, k);
    s.slots.insert(s.slots.begin() + static_cast<std::ptrdiff_t>(k) + 1, setup.slots[k]);
    IntervalTable identity;
    for (int i : setup.slots[k])
        for (int j : setup.slots[k]) identity.entries[{i, j}] = i == j ? Pair(1, 0) : Pair(0, 0);
    AmplitudeAssignment a = asg;
    a.setup = {s.id};
    a.intervals.insert(a.intervals.begin() + static_cast<std::ptrdiff_t>(k), identity);
    return {s, a};
}

Sequence interleave_trivial(const Sequence& s, const Setup& setup, std::size_t k) {
    validate(s, setup);
    auto o = s.outcomes();
    o.insert(o.begin() + static_cast<std::ptrdiff_t>(k) + 1, Outcome(setup.slots[k]));
    return Sequence(interleaved_id(setup, k), std::move(o));
}

// ---- symmetry laws -----------------------------------------------------------------

std::string LawResult::status() const {
    if (instances == 0) return "no instances";
    return failures == 0 ? "pass" : "fail";
}

bool SymmetryReport::all_passed() const noexcept {
    return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.passed(); });
}

namespace {

class Generator {
public:
    Generator(const GeneratorConfig& cfg, std::mt19937_64 rng) : cfg_(cfg), rng_(std::move(rng)) {}

    int label() { return 1 + static_cast<int>(rng_() % static_cast<unsigned>(cfg_.labels)); }
    int length(int min_len) {
        if (cfg_.max_length < min_len) return 0;
        return min_len + static_cast<int>(rng_() % static_cast<unsigned>(cfg_.max_length - min_len + 1));
    }

    Outcome subset() {
        std::vector<int> l;
        while (l.empty())
            for (int i = 1; i <= cfg_.labels; ++i)
                if (rng_() & 1U) l.push_back(i);
        return Outcome(std::move(l));
    }

    // `parts` pairwise disjoint non-empty subsets, or empty if labels are too few.
    std::vector<Outcome> disjoint(int parts) {
        if (cfg_.labels < parts) return {};
        for (;;) {
            std::vector<std::vector<int>> bucket(static_cast<std::size_t>(parts) + 1);
            for (int i = 1; i <= cfg_.labels; ++i) bucket[rng_() % bucket.size()].push_back(i);
            if (std::any_of(bucket.begin(), bucket.end() - 1, [](const auto& b) { return b.empty(); })) continue;
            std::vector<Outcome> out;
            for (int p = 0; p < parts; ++p) out.emplace_back(bucket[static_cast<std::size_t>(p)]);
            return out;
        }
    }

    std::vector<Outcome> outcomes(int n, std::optional<int> first = std::nullopt) {
        std::vector<Outcome> o;
        o.push_back(Outcome{first.value_or(label())});
        for (int i = 1; i + 1 < n; ++i) o.push_back(subset());
        o.push_back(Outcome{label()});
        return o;
    }

    std::string setup_id() { return "S" + std::to_string(rng_() % 1000); }

    IntervalTable table() {
        IntervalTable t;
        const double s = 1.0 / cfg_.labels;
        for (int i = 1; i <= cfg_.labels; ++i)
            for (int j = 1; j <= cfg_.labels; ++j) t.entries[{i, j}] = Pair(uniform(rng_, -s, s), uniform(rng_, -s, s));
        return t;
    }
    AmplitudeAssignment assignment(const std::string& id, int n) {
        AmplitudeAssignment a{{id}, {}};
        for (int k = 0; k + 1 < n; ++k) a.intervals.push_back(table());
        return a;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    GeneratorConfig cfg_;
    std::mt19937_64 rng_;
};

// Family of sequences over one set-up differing only at interior slot k.
struct Split {
    std::vector<Sequence> parts;
};

std::optional<Split> split(Generator& gen, int parts) {
    const int n = gen.length(3);
    if (n == 0) return std::nullopt;
    const auto sets = gen.disjoint(parts);
    if (sets.empty()) return std::nullopt;
    const std::string id = gen.setup_id();
    auto base = gen.outcomes(n);
    const auto k = 1 + static_cast<std::size_t>(gen.rng()() % static_cast<unsigned>(n - 2));
    Split s;
    for (const auto& o : sets) {
        auto v = base;
        v[k] = o;
        s.parts.emplace_back(id, std::move(v));
    }
    return s;
}

Sequence continuation(Generator& gen, const Sequence& from) {
    const int n = gen.length(2);
    return Sequence(gen.setup_id(), gen.outcomes(n, from.outcomes().back().labels().front()));
}

Sequence lead_in(Generator& gen, const Sequence& to) {
    const int n = gen.length(2);
    auto o = gen.outcomes(n);
    o.back() = to.outcomes().front();
    return Sequence(gen.setup_id(), std::move(o));
}

void record(LawResult& law, bool ok, const std::function<std::string()>& witness) {
    ++law.instances;
    if (ok) return;
    if (law.failures++ == 0) law.witness = witness();
}

}  // namespace

SymmetryReport check_symmetries(const GeneratorConfig& cfg) {
    if (cfg.labels < 1 || cfg.max_length < 2 || cfg.instances < 0)
        throw std::invalid_argument("generator needs labels >= 1 and max_length >= 2");
    SymmetryReport rep{cfg, {}};
    auto law = [&](const std::string& name, const std::function<void(Generator&, LawResult&)>& body) {
        LawResult r{name, 0, 0, ""};
        Generator gen(cfg, task_stream(cfg.seed, "symmetry/" + name));
        for (int i = 0; i < cfg.instances; ++i) body(gen, r);
        rep.laws.push_back(r);
    };

    law("parallel-commutative", [](Generator& gen, LawResult& r) {
        auto s = split(gen, 2);
        if (!s) return;
        const auto &a = s->parts[0], &b = s->parts[1];
        record(r, parallel(a, b) == parallel(b, a), [&] { return a.to_string() + " | " + b.to_string(); });
    });
    law("parallel-associative", [](Generator& gen, LawResult& r) {
        auto s = split(gen, 3);
        if (!s) return;
        const auto &a = s->parts[0], &b = s->parts[1], &c = s->parts[2];
        record(r, parallel(parallel(a, b), c) == parallel(a, parallel(b, c)),
               [&] { return a.to_string() + " | " + b.to_string() + " | " + c.to_string(); });
    });
    law("series-associative", [](Generator& gen, LawResult& r) {
        const int n = gen.length(2);
        const Sequence a(gen.setup_id(), gen.outcomes(n));
        const Sequence b = continuation(gen, a);
        const Sequence c = continuation(gen, b);
        record(r, series(series(a, b), c) == series(a, series(b, c)),
               [&] { return a.to_string() + " . " + b.to_string() + " . " + c.to_string(); });
    });
    law("right-distributive", [](Generator& gen, LawResult& r) {
        auto s = split(gen, 2);
        if (!s) return;
        const auto &a = s->parts[0], &b = s->parts[1];
        const Sequence c = continuation(gen, a);
        record(r, series(parallel(a, b), c) == parallel(series(a, c), series(b, c)),
               [&] { return a.to_string() + " | " + b.to_string() + " then " + c.to_string(); });
    });
    law("left-distributive", [](Generator& gen, LawResult& r) {
        auto s = split(gen, 2);
        if (!s) return;
        const auto &a = s->parts[0], &b = s->parts[1];
        const Sequence c = lead_in(gen, a);
        record(r, series(c, parallel(a, b)) == parallel(series(c, a), series(c, b)),
               [&] { return c.to_string() + " then " + a.to_string() + " | " + b.to_string(); });
    });
    law("amplitude-parallel", [](Generator& gen, LawResult& r) {
        auto s = split(gen, 2);
        if (!s) return;
        const auto &a = s->parts[0], &b = s->parts[1];
        const auto asg = gen.assignment(a.setup().front(), static_cast<int>(a.size()));
        const Pair lhs = amplitude(parallel(a, b), asg);
        const Pair rhs = pair_add(amplitude(a, asg), amplitude(b, asg));
        record(r, pair_sub(lhs, rhs).norm_inf() < 1e-12, [&] { return a.to_string() + " | " + b.to_string(); });
    });
    law("amplitude-series", [](Generator& gen, LawResult& r) {
        const int n = gen.length(2);
        const Sequence a(gen.setup_id(), gen.outcomes(n));
        const Sequence b = continuation(gen, a);
        const auto asg_a = gen.assignment(a.setup().front(), static_cast<int>(a.size()));
        const auto asg_b = gen.assignment(b.setup().front(), static_cast<int>(b.size()));
        const Pair lhs = amplitude(series(a, b), concat(asg_a, asg_b));
        const Pair rhs = complex_mul(amplitude(a, asg_a), amplitude(b, asg_b));
        record(r, pair_sub(lhs, rhs).norm_inf() < 1e-12, [&] { return a.to_string() + " . " + b.to_string(); });
    });
    return rep;
}

}  // namespace feynrules
