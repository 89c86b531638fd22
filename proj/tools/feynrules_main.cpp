// Command-line front end: classification, reduction, probability rules,
// reciprocity and the sequence lab.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "feynrules/errors.hpp"
#include "feynrules/json_io.hpp"
#include "feynrules/version.hpp"

using namespace feynrules;
using io::Json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kNotAssociative = 2, kTableDeviation = 3, kMalformed = 64, kMissingAmplitude = 65 };

struct Options {
    double tol = 1e-9;
    std::uint64_t seed = 7;
    int samples = 2000;
    std::string format = "text";
    std::string out;
};

struct Report {
    Json result;
    std::string text;
    int code = kOk;
};

std::vector<double> parse_numbers(const std::string& s, std::size_t expected, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw SchemaError(what + ": '" + item + "' is not a number");
        }
        if (used != item.size()) throw SchemaError(what + ": '" + item + "' is not a number");
        v.push_back(x);
    }
    if (v.size() != expected)
        throw SchemaError(what + ": expected " + std::to_string(expected) + " comma-separated numbers");
    return v;
}

GammaVector parse_gamma(const std::string& s) {
    const auto v = parse_numbers(s, 8, "gamma");
    std::array<double, 8> g{};
    std::copy(v.begin(), v.end(), g.begin());
    return GammaVector(g);
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string pair_text(const Pair& p) { return "(" + num(p.c1()) + ", " + num(p.c2()) + ")"; }

std::string matrix_text(const Json& m) {
    return "[[" + num(m[0][0].get<double>()) + ", " + num(m[0][1].get<double>()) + "], [" +
           num(m[1][0].get<double>()) + ", " + num(m[1][1].get<double>()) + "]]";
}

Report do_classify(const std::string& gamma, const Options& o) {
    const auto c = classify(parse_gamma(gamma), o.tol);
    Report r{io::to_json(c), {}, c.associative() ? kOk : kNotAssociative};
    std::ostringstream t;
    t << "family: " << family_name(c.family) << "\n";
    for (const auto& [k, v] : r.result["params"].items()) t << "  " << k << " = " << v.dump() << "\n";
    if (auto mu = mu_of(c)) t << "mu: " << *mu << "\n";
    if (c.borderline) t << "borderline: yes\n";
    for (const auto& n : c.notes) t << "note: " << n << "\n";
    r.text = t.str();
    return r;
}

Report do_reduce(const std::string& gamma, const Options& o) {
    const auto c = classify(parse_gamma(gamma), o.tol);
    const auto red = reduce(c);
    Report r{Json{{"classification", io::to_json(c)}, {"reduction", io::to_json(red)}}, {},
             c.associative() ? kOk : kNotAssociative};
    std::ostringstream t;
    t << "family: " << family_name(c.family) << "\n";
    if (const auto* x = std::get_if<Reduced>(&red)) {
        t << "standard form: " << to_string(x->form) << "\n";
        if (x->mu) t << "mu: " << *x->mu << "\n";
        t << "map: " << matrix_text(io::to_json(x->map)) << "\n";
    } else {
        t << "inadmissible: " << std::get<Inadmissible>(red).reason << "\n";
    }
    r.text = t.str();
    return r;
}

Report do_solve_h(const std::string& form, double alpha, std::optional<double> beta, const std::string& at) {
    HFunction h;
    try {
        h = solve_h(parse_form(form), alpha, beta);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    Report r{io::to_json(h), {}, kOk};
    std::ostringstream t;
    t << "h(x) = " << describe(h) << "  [" << formula_id(h.form) << "]\n";
    t << "admissible: " << (admissible(h) ? "yes" : "no") << "\n";
    if (!at.empty()) {
        const auto v = parse_numbers(at, 2, "--at");
        const Pair x(v[0], v[1]);
        const double value = h_eval(h, x);
        r.result["at"] = io::to_json(x);
        r.result["value"] = value;
        t << "h" << pair_text(x) << " = " << num(value) << "\n";
    }
    r.text = t.str();
    return r;
}

Report do_solve_reciprocity(const std::string& form) {
    StandardForm f;
    try {
        f = parse_form(form);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    const auto s = solve_reciprocity(f);
    Report r{io::to_json(s), {}, kOk};
    std::ostringstream t;
    t << "non-zero solutions of R(a*b) = R(b)*R(a) for " << form << ":\n";
    for (const auto& j : r.result["isolated"])
        t << "  " << matrix_text(j["matrix"]) << (j["name"].get<std::string>().empty() ? "" : "  " + j["name"].get<std::string>())
          << (j["invertible"].get<bool>() ? "  invertible" : "  singular") << "\n";
    for (const auto& j : r.result["families"]) {
        t << "  family " << matrix_text(j["base"]["matrix"]);
        for (const auto& d : j["directions"]) t << " + t " << matrix_text(d);
        t << "\n";
    }
    r.text = t.str();
    return r;
}

std::string verdict_text(const Json& v) {
    std::ostringstream t;
    t << v["kind"].get<std::string>();
    const std::string k = v["kind"];
    if (k == "Accepted") t << " alpha=" << v["exponent"]["alpha"].dump() << " beta=" << v["exponent"]["beta"].dump();
    if (k == "RejectedCounterexample")
        t << " a=" << v["a"].dump() << " b=" << v["b"].dump() << " h(a)+h(b)=" << num(v["lhs"]) << " h(c)=" << num(v["rhs"])
          << " [" << v["construction"].get<std::string>() << "]";
    if (k == "RejectedInadmissibleExponents") t << " " << v["detail"].get<std::string>();
    if (k == "RejectedAsymmetricProbability")
        t << " a=" << v["a"].dump() << " p(a)=" << num(v["p_a"]) << " p(R a)=" << num(v["p_ra"]);
    if (k == "RejectedNonInvertible") t << " det=" << num(v["det"]);
    return t.str();
}

Report do_eliminate(const std::string& form, const std::string& op, const std::string& matrix, const Options& o) {
    StandardForm f;
    ReciprocityOp r;
    try {
        f = parse_form(form);
        if (!matrix.empty()) {
            const auto v = parse_numbers(matrix, 4, "--matrix");
            r = {v[0], v[1], v[2], v[3]};
        } else {
            r = ReciprocityOp::by_name(op);
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    const auto v = eliminate(f, r, {o.tol, o.seed, o.samples});
    Report rep{Json{{"form", form}, {"operator", io::to_json(r)}, {"verdict", io::to_json(v)}}, {}, kOk};
    rep.text = form + " / " + matrix_text(rep.result["operator"]["matrix"]) + ": " + verdict_text(rep.result["verdict"]) + "\n";
    return rep;
}

Report do_derive(const Options& o) {
    const auto d = run_full_elimination({o.tol, o.seed, o.samples});
    Report r{io::to_json(d), {}, d.table_matches ? kOk : kTableDeviation};
    std::ostringstream t;
    t << "elimination table\n";
    for (const auto& c : r.result["cells"]) {
        t << "  " << std::left << std::setw(4) << c["form"].get<std::string>() << std::setw(34)
          << c["operator"].get<std::string>() << verdict_text(c["verdict"]);
        if (!c["matches"].get<bool>()) t << "   <-- deviation";
        t << "\n";
    }
    t << "acceptances: " << d.acceptances << "\n";
    if (d.table_matches) {
        t << "rules: pairs add componentwise; sequences in series multiply as complex numbers;\n"
             "       probability of a pair (x1, x2) is x1^2 + x2^2\n";
        const Pair a(1, 2), b(3, 4);
        t << "  " << pair_text(a) << " + " << pair_text(b) << " = " << pair_text(pair_add(a, b)) << "\n";
        t << "  " << pair_text(a) << " x " << pair_text(b) << " = " << pair_text(complex_mul(a, b)) << "\n";
        t << "  p" << pair_text(b) << " = " << num(h_eval(solve_h(StandardForm::C1, 2), b)) << "\n";
        r.result["rules"] = {{"sum", "componentwise"}, {"product", "complex"}, {"probability", "x1^2 + x2^2"}};
    } else {
        t << "verdict table deviates from the expected derivation\n";
    }
    r.text = t.str();
    return r;
}

Report do_simulate(const std::string& setup_file, const std::string& seq_file) {
    const auto [setup, asg] = io::setup_from_json(io::parse_file(setup_file));
    const auto seqs = io::sequences_from_json(io::parse_file(seq_file), setup.id);
    Json rows = Json::array();
    std::ostringstream t;
    for (const auto& s : seqs) {
        try {
            validate(s, setup);
        } catch (const SequenceError& e) {
            throw SchemaError(e.what());
        }
        const Pair amp = amplitude(s, asg);
        const double p = probability(s, asg);
        Json out = Json::array();
        for (const auto& o : s.outcomes()) out.push_back(o.labels());
        rows.push_back(Json{{"sequence", out}, {"amplitude", io::to_json(amp)}, {"probability", p}});
        t << s.to_string() << "  amplitude " << pair_text(amp) << "  probability " << num(p) << "\n";
    }
    Report r{Json{{"setup_id", setup.id}, {"results", rows}}, {}, kOk};
    const bool square = [&] {
        for (std::size_t k = 0; k + 1 < setup.slots.size(); ++k) {
            auto a = setup.slots[k], b = setup.slots[k + 1];
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) return false;
        }
        return true;
    }();
    if (square) {
        const auto n = normalization_check(setup, asg);
        r.result["normalization"] = io::to_json(n);
        t << "normalization: " << (n.preserving ? "tables preserve total probability" : "tables are not unitary")
          << ", max total error " << num(n.max_total_error) << ", trivial-measurement change "
          << num(n.max_interleave_change) << "\n";
    }
    r.text = t.str();
    return r;
}

Report do_check_symmetries(int labels, int max_length, const Options& o) {
    const auto rep = check_symmetries({o.seed, o.samples, labels, max_length});
    Report r{io::to_json(rep), {}, rep.all_passed() ? kOk : kFailure};
    std::ostringstream t;
    for (const auto& l : rep.laws) {
        t << std::left << std::setw(22) << l.law << l.status() << " (" << l.instances << " instances)";
        if (!l.witness.empty()) t << " witness: " << l.witness;
        t << "\n";
    }
    r.text = t.str();
    return r;
}

void emit(const std::string& command, const Report& r, const Options& o) {
    std::string body;
    if (o.format == "json") {
        Json env;
        env["tool"] = "feynrules";
        env["version"] = kVersion;
        env["command"] = command;
        env["config"] = {{"tol", o.tol}, {"seed", o.seed}, {"samples", o.samples}};
        env["exit_code"] = r.code;
        env["result"] = r.result;
        body = env.dump(2) + "\n";
    } else {
        body = "feynrules " + std::string(kVersion) + " " + command + " (tol " + num(o.tol) + ", seed " +
               std::to_string(o.seed) + ", samples " + std::to_string(o.samples) + ")\n" + r.text;
    }
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw SchemaError("cannot write " + o.out);
    f << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pair-valued amplitude toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Master random seed");
    app.add_option("--samples", o.samples, "Random samples per check")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", o.out, "Write the report to a file");

    std::string gamma, form, op = "identity", matrix, at, setup_file, seq_file;
    std::optional<double> beta;
    double alpha = 2.0;
    int labels = 4, max_length = 6;

    auto* c_classify = app.add_subcommand("classify", "Classify a bilinear product g1,...,g8");
    c_classify->add_option("gamma", gamma, "Eight comma-separated coefficients")->required();
    auto* c_reduce = app.add_subcommand("reduce", "Reduce a product to its standard form");
    c_reduce->add_option("gamma", gamma, "Eight comma-separated coefficients")->required();
    auto* c_h = app.add_subcommand("solve-h", "Probability function of a standard form");
    c_h->add_option("--form", form, "C1, C2, C3, N1 or N2")->required();
    c_h->add_option("--alpha", alpha, "First exponent");
    c_h->add_option("--beta", beta, "Second exponent (C2, C3)");
    c_h->add_option("--at", at, "Evaluate at x1,x2");
    auto* c_rec = app.add_subcommand("solve-reciprocity", "Solve for reciprocity operators");
    c_rec->add_option("--form", form, "Standard form")->required();
    auto* c_elim = app.add_subcommand("eliminate", "Run the elimination for one operator");
    c_elim->add_option("--form", form, "Standard form")->required();
    c_elim->add_option("--op", op, "identity, conjugation, swap or projection");
    c_elim->add_option("--matrix", matrix, "r1,r2,r3,r4 instead of a named operator");
    auto* c_derive = app.add_subcommand("derive", "Full derivation of the probability rules");
    auto* c_sim = app.add_subcommand("simulate", "Amplitudes and probabilities for sequences");
    c_sim->add_option("setup", setup_file, "Set-up JSON")->required();
    c_sim->add_option("sequences", seq_file, "Sequences JSON")->required();
    auto* c_sym = app.add_subcommand("check-symmetries", "Check the sequence laws on random instances");
    c_sym->add_option("--labels", labels, "Atomic labels per slot")->check(CLI::PositiveNumber);
    c_sym->add_option("--max-length", max_length, "Longest sequence")->check(CLI::Range(2, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kMalformed;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Report r;
        if (*c_classify) r = do_classify(gamma, o);
        else if (*c_reduce) r = do_reduce(gamma, o);
        else if (*c_h) r = do_solve_h(form, alpha, beta, at);
        else if (*c_rec) r = do_solve_reciprocity(form);
        else if (*c_elim) r = do_eliminate(form, op, matrix, o);
        else if (*c_derive) r = do_derive(o);
        else if (*c_sim) r = do_simulate(setup_file, seq_file);
        else if (*c_sym) r = do_check_symmetries(labels, max_length, o);
        emit(command, r, o);
        return r.code;
    } catch (const MissingAmplitude& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMissingAmplitude;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
