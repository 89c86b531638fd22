#include "feynrules/json_io.hpp"

#include <fstream>
#include <sstream>

#include "feynrules/errors.hpp"

namespace feynrules::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

double number(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

int label(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer label");
    return j.get<int>();
}

std::vector<int> labels(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return {j.get<int>()};
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of labels");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(label(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Json exponent_list(const std::vector<Exponent>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(to_json(e));
    return a;
}

}  // namespace

Json to_json(const Pair& p) { return Json::array({p.c1(), p.c2()}); }

Json to_json(const GammaVector& g) {
    Json a = Json::array();
    for (double x : g.data()) a.push_back(x);
    return a;
}

Json to_json(const Regrading& m) { return Json::array({Json::array({m.s(), m.t()}), Json::array({m.u(), m.v()})}); }

Json to_json(const Classification& c) {
    Json j;
    j["gamma"] = to_json(c.input);
    j["associative"] = c.associative();
    j["family"] = family_name(c.family);
    Json params = Json::object();
    if (const auto* a = std::get_if<CommutativeA>(&c.family)) {
        params = {{"theta", a->theta}, {"phi", a->phi}, {"psi", a->psi}, {"epsilon", a->epsilon},
                  {"mirrored", a->mirrored}};
    } else if (const auto* b = std::get_if<NonCommutativeB>(&c.family)) {
        params = {{"theta", b->theta}, {"phi", b->phi}};
    } else if (const auto* nc = std::get_if<NonCommutativeC>(&c.family)) {
        params = {{"theta", nc->theta}, {"psi", nc->psi}};
    } else if (const auto* n = std::get_if<NotAssociative>(&c.family)) {
        Json r = Json::array();
        for (double x : n->residuals) r.push_back(x);
        params = {{"residuals", r}};
    }
    j["params"] = params;
    if (auto mu = mu_of(c)) j["mu"] = *mu;
    j["tol"] = c.tol;
    j["borderline"] = c.borderline;
    j["notes"] = c.notes;
    return j;
}

Json to_json(const ReductionResult& r) {
    if (const auto* red = std::get_if<Reduced>(&r)) {
        Json j{{"form", to_string(red->form)}};
        j["mu"] = red->mu ? Json(*red->mu) : Json(nullptr);
        j["map"] = to_json(red->map);
        return j;
    }
    return Json{{"inadmissible", std::get<Inadmissible>(r).reason}};
}

Json to_json(const HFunction& h) {
    Json j{{"form", to_string(h.form)}, {"formula", formula_id(h.form)}, {"alpha", h.alpha}};
    j["beta"] = h.beta ? Json(*h.beta) : Json(nullptr);
    j["expression"] = describe(h);
    j["admissible"] = admissible(h);
    return j;
}

Json to_json(const ReciprocityOp& r) {
    Json j{{"matrix", Json::array({Json::array({r.r1, r.r2}), Json::array({r.r3, r.r4})})}};
    j["name"] = r.name();
    j["invertible"] = r.invertible();
    return j;
}

Json to_json(const ReciprocitySolutions& s) {
    Json iso = Json::array(), fam = Json::array();
    for (const auto& r : s.isolated) iso.push_back(to_json(r));
    for (const auto& f : s.families) {
        Json d = Json::array();
        for (const auto& x : f.directions) d.push_back(to_json(x)["matrix"]);
        fam.push_back(Json{{"base", to_json(f.base)}, {"directions", d}});
    }
    return Json{{"isolated", iso}, {"families", fam}};
}

Json to_json(const Exponent& e) {
    Json j{{"alpha", e.alpha}};
    j["beta"] = e.beta ? Json(*e.beta) : Json(nullptr);
    return j;
}

Json to_json(const Verdict& v) {
    Json j{{"kind", verdict_kind(v)}};
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Accepted>) {
                j["exponent"] = to_json(x.exponent);
                j["alternatives"] = exponent_list(x.alternatives);
            } else if constexpr (std::is_same_v<T, RejectedNonInvertible>) {
                j["det"] = x.det;
            } else if constexpr (std::is_same_v<T, RejectedCounterexample>) {
                j["a"] = to_json(x.a);
                j["b"] = to_json(x.b);
                j["lhs"] = x.lhs;
                j["rhs"] = x.rhs;
                j["exponent"] = to_json(x.exponent);
                j["construction"] = x.construction;
                j["exponents_refuted"] = x.exponents_refuted;
            } else if constexpr (std::is_same_v<T, RejectedInadmissibleExponents>) {
                j["surviving"] = exponent_list(x.surviving);
                j["detail"] = x.detail;
            } else if constexpr (std::is_same_v<T, RejectedAsymmetricProbability>) {
                j["a"] = to_json(x.a);
                j["p_a"] = x.p_a;
                j["p_ra"] = x.p_ra;
                j["exponent"] = to_json(x.exponent);
                j["surviving"] = exponent_list(x.surviving);
            } else {
                j["detail"] = x.detail;
            }
        },
        v);
    return j;
}

Json to_json(const DerivationReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        Json j{{"form", to_string(c.form)}, {"operator", c.op_label}};
        j["matrix"] = c.op ? to_json(*c.op)["matrix"] : Json(nullptr);
        j["expected_cell"] = c.expected_cell;
        j["expected"] = c.expected ? Json(*c.expected) : Json(nullptr);
        j["verdict"] = to_json(c.verdict);
        j["matches"] = c.matches;
        cells.push_back(j);
    }
    Json out;
    out["config"] = {{"tol", r.config.tol}, {"seed", r.config.seed}, {"samples", r.config.samples}};
    out["cells"] = cells;
    out["acceptances"] = r.acceptances;
    out["table_matches"] = r.table_matches;
    out["notes"] = r.notes;
    return out;
}

Json to_json(const NormalizationReport& r) {
    Json iv = Json::array(), tot = Json::array();
    for (const auto& c : r.intervals)
        iv.push_back(Json{{"interval", c.interval}, {"square", c.square}, {"unitarity_defect", c.unitarity_defect}});
    for (const auto& t : r.totals)
        tot.push_back(Json{{"label", t.label}, {"coarse_total", t.coarse_total}, {"atomic_total", t.atomic_total}});
    return Json{{"preserving", r.preserving},
                {"intervals", iv},
                {"totals", tot},
                {"max_total_error", r.max_total_error},
                {"max_interleave_change", r.max_interleave_change},
                {"interleave_cases", r.interleave_cases}};
}

Json to_json(const SymmetryReport& r) {
    Json laws = Json::array();
    for (const auto& l : r.laws)
        laws.push_back(Json{{"law", l.law},
                            {"status", l.status()},
                            {"instances", l.instances},
                            {"failures", l.failures},
                            {"witness", l.witness}});
    return Json{{"config",
                 {{"seed", r.config.seed},
                  {"instances", r.config.instances},
                  {"labels", r.config.labels},
                  {"max_length", r.config.max_length}}},
                {"laws", laws},
                {"all_passed", r.all_passed()}};
}

GammaVector gamma_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 8) fail("gamma", "expected an array of 8 numbers");
    std::array<double, 8> g{};
    for (std::size_t i = 0; i < 8; ++i) g[i] = number(j[i], "gamma[" + std::to_string(i) + "]");
    return GammaVector(g);
}

std::pair<Setup, AmplitudeAssignment> setup_from_json(const Json& j) {
    if (!j.is_object()) fail("setup", "expected an object");
    if (!j.contains("setup_id") || !j["setup_id"].is_string() || j["setup_id"].get<std::string>().empty())
        fail("setup.setup_id", "expected a non-empty string");
    Setup s{j["setup_id"].get<std::string>(), {}};
    if (!j.contains("slots") || !j["slots"].is_array() || j["slots"].size() < 2)
        fail("setup.slots", "expected an array of at least two label arrays");
    for (std::size_t i = 0; i < j["slots"].size(); ++i) {
        const std::string where = "setup.slots[" + std::to_string(i) + "]";
        auto l = labels(j["slots"][i], where);
        std::sort(l.begin(), l.end());
        if (std::adjacent_find(l.begin(), l.end()) != l.end()) fail(where, "duplicate label");
        s.slots.push_back(std::move(l));
    }
    if (!j.contains("intervals") || !j["intervals"].is_array() || j["intervals"].size() + 1 != s.slots.size())
        fail("setup.intervals", "expected one table per pair of adjacent slots");
    AmplitudeAssignment a{{s.id}, {}};
    for (std::size_t k = 0; k < j["intervals"].size(); ++k) {
        const std::string where = "setup.intervals[" + std::to_string(k) + "]";
        const Json& t = j["intervals"][k];
        if (!t.is_array()) fail(where, "expected an array of [from, to, c1, c2] entries");
        IntervalTable table;
        for (std::size_t e = 0; e < t.size(); ++e) {
            const std::string w = where + "[" + std::to_string(e) + "]";
            const Json& row = t[e];
            if (!row.is_array() || row.size() != 4) fail(w, "expected [from, to, c1, c2]");
            const int from = label(row[0], w + "[0]"), to = label(row[1], w + "[1]");
            if (std::find(s.slots[k].begin(), s.slots[k].end(), from) == s.slots[k].end() ||
                std::find(s.slots[k + 1].begin(), s.slots[k + 1].end(), to) == s.slots[k + 1].end())
                fail(w, "transition uses an undeclared label");
            Pair amp;
            try {
                amp = Pair(number(row[2], w + "[2]"), number(row[3], w + "[3]"));
            } catch (const DomainError& e) {
                fail(w, e.what());
            }
            if (!table.entries.emplace(std::make_pair(from, to), amp).second) fail(w, "duplicate transition");
        }
        a.intervals.push_back(std::move(table));
    }
    return {s, a};
}

std::vector<Sequence> sequences_from_json(const Json& j, const std::string& default_setup) {
    const Json* list = &j;
    std::string setup = default_setup;
    if (j.is_object()) {
        if (j.contains("setup_id")) {
            if (!j["setup_id"].is_string()) fail("sequences.setup_id", "expected a string");
            setup = j["setup_id"].get<std::string>();
        }
        if (!j.contains("sequences")) fail("sequences", "missing 'sequences'");
        list = &j["sequences"];
    }
    if (!list->is_array()) fail("sequences", "expected an array");
    std::vector<Sequence> out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const std::string where = "sequences[" + std::to_string(i) + "]";
        const Json& s = (*list)[i];
        if (!s.is_array()) fail(where, "expected an array of outcomes");
        std::vector<Outcome> o;
        try {
            for (std::size_t k = 0; k < s.size(); ++k) o.emplace_back(labels(s[k], where + "[" + std::to_string(k) + "]"));
            out.emplace_back(setup, std::move(o));
        } catch (const SequenceError& e) {
            fail(where, e.what());
        }
    }
    return out;
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

}  // namespace feynrules::io
