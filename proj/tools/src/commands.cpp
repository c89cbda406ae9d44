#include "diffcert/cli/commands.hpp"

#include "diffcert/cli/parse.hpp"
#include "diffcert/cli/report.hpp"
#include "diffcert/linode.hpp"
#include "diffcert/series.hpp"
#include "diffcert/vfield.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace diffcert::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string field;
    std::string poly;
    std::string op;
    std::string rhs = "0";
    std::string forcing = "y1";
    std::string args;
    std::string series = "u1";
    std::string window = "300,600";
    std::string file;
    std::string format = "text";
    int dz = 0;
    int dy = 0;
    int dw = -1;
    int bound = -1;
    int order = -1;
    bool compare = false;
    bool assume_irreducible = false;
};

struct Outcome {
    json inputs = json::object();
    json config = json::object();
    json result = json::object();
    std::string verdict;
    bool reverified = true;
    int exit = exit_verified;
};

std::string fixed(double v, int digits = 6) {
    char buf[64];
    if (std::fabs(v) < 0.5 * std::pow(10.0, -digits)) v = 0;
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

json strings(const std::vector<MultiPoly>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.str());
    return a;
}

int status_for(bool reverified, bool bounded) {
    if (!reverified) return exit_error;
    return bounded ? exit_bounded : exit_verified;
}

Derivation field_derivation(const Options& o, Outcome& out) {
    PolyVectorField f = field_argument(o.field);
    out.inputs["field"] = f.str();
    return Derivation(std::move(f));
}

MultiPoly poly_for(const Derivation& d, const std::string& text, const char* what) {
    MultiPoly p = parse_polynomial(text, d.nvars());
    if (p.nvars() != d.nvars()) {
        throw Error(std::string(what) + " uses y" + std::to_string(p.nvars()) + " but the field has " +
                    std::to_string(d.nvars()) + " components");
    }
    return p;
}

SearchBounds bounds_of(const Options& o, Outcome& out) {
    out.config["dz"] = o.dz;
    out.config["dy"] = o.dy;
    return {o.dz, o.dy};
}

Outcome cmd_derive(const Options& o) {
    Outcome out;
    Derivation d = field_derivation(o, out);
    MultiPoly p = poly_for(d, o.poly, "polynomial");
    out.inputs["poly"] = p.str();
    out.result["Dp"] = d.apply(p).str();
    out.verdict = "computed";
    return out;
}

Outcome cmd_cofactor(const Options& o) {
    Outcome out;
    Derivation d = field_derivation(o, out);
    MultiPoly p = poly_for(d, o.poly, "polynomial");
    out.inputs["poly"] = p.str();
    MultiPoly dp = d.apply(p);
    out.result["Dp"] = dp.str();
    auto w = cofactor_of(d, p);
    if (w) {
        out.result["cofactor"] = w->str();
        out.verdict = "darboux";
        out.reverified = dp == MultiPoly::from_univariate(d.nvars(), *w) * p;
    } else {
        out.result["cofactor"] = nullptr;
        out.verdict = "not-darboux";
    }
    out.exit = status_for(out.reverified, false);
    return out;
}

Outcome cmd_darboux(const Options& o) {
    Outcome out;
    Derivation d = field_derivation(o, out);
    SearchBounds b = bounds_of(o, out);
    DarbouxSearch s = darboux_search(d, b, o.dw);
    out.config["dw"] = s.cofactor_degree;
    if (o.dw < 0) out.config["dw_note"] = "default: max z-degree of the field";
    out.config["effective_dw"] = s.effective_cofactor_degree;
    json fams = json::array();
    for (const auto& fam : s.families) {
        json f;
        f["cofactor"] = fam.cofactor.str();
        f["dimension"] = fam.basis.size();
        f["basis"] = strings(fam.basis);
        fams.push_back(f);
        for (const auto& p : fam.basis) {
            auto w = cofactor_of(d, p);
            out.reverified = out.reverified && w && *w == fam.cofactor;
        }
    }
    out.result["families"] = fams;
    out.result["only_constants"] = s.only_constants();
    out.verdict = s.only_constants() ? "only-constants" : "found";
    out.exit = status_for(out.reverified, s.only_constants());
    return out;
}

Outcome cmd_first_integrals(const Options& o) {
    Outcome out;
    Derivation d = field_derivation(o, out);
    FirstIntegralSearch s = first_integrals(d, bounds_of(o, out));
    out.result["dimension"] = s.basis.size();
    out.result["basis"] = strings(s.basis);
    out.result["modulo"] = "constants";
    for (const auto& p : s.basis) out.reverified = out.reverified && d.apply(p).is_zero();
    out.verdict = s.basis.empty() ? "none-in-bounds" : "found";
    out.exit = status_for(out.reverified, s.basis.empty());
    return out;
}

Outcome cmd_lemma2(const Options& o) {
    Outcome out;
    Derivation d = field_derivation(o, out);
    MultiPoly f = poly_for(d, o.forcing, "forcing term");
    out.inputs["forcing"] = f.str();
    AffineDarbouxSolution s = affine_darboux(d, f, bounds_of(o, out));
    json basis = json::array();
    for (const auto& [p, c] : s.basis) {
        json e;
        e["p"] = p.str();
        e["c"] = c.str();
        basis.push_back(e);
        out.reverified = out.reverified && (d.apply(p) + f * c).is_zero();
    }
    out.result["equation"] = "D(p) + c*(" + f.str() + ") = 0";
    out.result["dimension"] = s.basis.size();
    out.result["basis"] = basis;
    out.result["c_forced_zero"] = s.c_forced_zero();
    out.result["only_constant_p"] = s.only_constant_p();
    out.verdict = s.only_constant_p() ? "only-constant-p-and-c-zero" : "nontrivial-solutions";
    out.exit = status_for(out.reverified, s.only_constant_p());
    return out;
}

DiffOperator operator_input(const Options& o, Outcome& out) {
    DiffOperator l = parse_operator(o.op);
    out.inputs["op"] = l.str();
    return l;
}

Outcome cmd_adjoint(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    DiffOperator a = adjoint(l);
    out.result["adjoint"] = a.str();
    out.result["self_adjoint"] = a == l;
    out.reverified = verify_lagrange(l).holds && adjoint(a) == l;
    out.verdict = a == l ? "self-adjoint" : "computed";
    out.exit = status_for(out.reverified, false);
    return out;
}

Outcome cmd_concomitant(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    BilinearConcomitant pi = concomitant(l);
    out.result["pi"] = pi.str();
    json table = json::array();
    for (int i = 0; i < pi.order; ++i) {
        for (int j = 0; j < pi.order; ++j) {
            if (pi.at(i, j).is_zero()) continue;
            json e;
            e["u"] = derivative_name("u", i);
            e["v"] = derivative_name("v", j);
            e["coefficient"] = pi.at(i, j).str();
            table.push_back(e);
        }
    }
    out.result["table"] = table;
    out.reverified = verify_lagrange(l).holds;
    out.verdict = "computed";
    out.exit = status_for(out.reverified, false);
    return out;
}

Outcome cmd_lagrange(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    LagrangeCheck c = verify_lagrange(l);
    out.result["identity"] = "v*L(u) - u*L*(v) - d/dz pi(u, v)";
    out.result["adjoint"] = adjoint(l).str();
    out.result["pi"] = concomitant(l).str();
    out.result["residual"] = c.residual.str(c.variable_names);
    out.reverified = c.holds;
    out.verdict = c.holds ? "holds" : "fails";
    out.exit = status_for(out.reverified, false);
    return out;
}

json singular_json(const std::vector<SingularPoint>& pts) {
    json a = json::array();
    for (const auto& s : pts) {
        json e;
        e["point"] = s.point.str();
        e["multiplicity"] = s.multiplicity;
        e["indicial"] = s.indicial.str("t");
        e["pole_bound"] = s.pole_bound;
        a.push_back(e);
    }
    return a;
}

Outcome cmd_ratsolve(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    UniPoly rhs = parse_polynomial(o.rhs).as_univariate();
    out.inputs["rhs"] = rhs.str();
    out.config["degree_cap"] = degree_cap();
    RatSolutionSpace s = rational_solutions(l, rhs);
    out.result["denominator"] = s.denominator.str();
    out.result["singular_points"] = singular_json(s.singular_points);
    out.result["consistent"] = s.consistent;
    out.result["capped"] = s.capped;
    if (s.consistent) {
        out.result["particular"] = s.particular.str();
        json h = json::array();
        for (const auto& r : s.homogeneous) h.push_back(r.str());
        out.result["homogeneous"] = h;
        out.reverified = l.apply(s.particular) == RatFunc(rhs);
        for (const auto& r : s.homogeneous) out.reverified = out.reverified && l.apply(r).is_zero();
    }
    if (!s.consistent) {
        out.verdict = "none";
    } else if (s.homogeneous.empty() && s.particular.is_zero()) {
        out.verdict = "only-zero";
    } else {
        out.verdict = "found";
    }
    if (s.capped) out.verdict += " (degree bound capped)";
    out.exit = status_for(out.reverified, s.capped);
    return out;
}

Outcome cmd_polysolve(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    UniPoly rhs = parse_polynomial(o.rhs).as_univariate();
    out.inputs["rhs"] = rhs.str();
    int cap = o.bound >= 0 ? o.bound : degree_cap();
    out.config["degree_cap"] = cap;
    PolySolutionSpace s = polynomial_solutions(l, rhs, cap);
    out.result["degree_bound"] = s.degree_bound == UniPoly::minus_infinity ? json("-infinity") : json(s.degree_bound);
    out.result["consistent"] = s.consistent;
    out.result["capped"] = s.capped;
    if (s.consistent) {
        out.result["particular"] = s.particular.str();
        json h = json::array();
        for (const auto& p : s.homogeneous) h.push_back(p.str());
        out.result["homogeneous"] = h;
        out.reverified = l.apply(s.particular) == rhs;
        for (const auto& p : s.homogeneous) out.reverified = out.reverified && l.apply(p).is_zero();
    }
    if (!s.consistent) {
        out.verdict = "none";
    } else if (s.homogeneous.empty() && s.particular.is_zero()) {
        out.verdict = "only-zero";
    } else {
        out.verdict = "found";
    }
    if (s.capped) out.verdict += " (degree bound capped)";
    out.exit = status_for(out.reverified, s.capped);
    return out;
}

constexpr int default_riccati_bound = 8;

bool riccati_holds(const DiffOperator& l, const RatFunc& w) {
    const RatFunc lead(l.leading());
    RatFunc lhs = w.derivative() + w * w + RatFunc(l.coefficient(1)) / lead * w + RatFunc(l.coefficient(0)) / lead;
    return lhs.is_zero();
}

Outcome cmd_riccati(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    int bound = o.bound >= 0 ? o.bound : default_riccati_bound;
    out.config["search_bound"] = bound;
    RiccatiResult r = riccati_rational_nonexistence(l, bound);
    out.result["equation"] = "w' + w^2 + a1*w + a0 = 0";
    json sols = json::array();
    for (const auto& w : r.solutions) {
        sols.push_back(w.str());
        out.reverified = out.reverified && riccati_holds(l, w);
    }
    out.result["solutions"] = sols;
    out.result["certificate"] = r.certificate;
    out.verdict = to_string(r.verdict);
    if (r.verdict == RiccatiVerdict::found) {
        std::string list;
        for (std::size_t i = 0; i < r.solutions.size(); ++i) list += (i ? ", " : "") + r.solutions[i].str();
        out.verdict += ": w = " + list;
    }
    out.exit = status_for(out.reverified, r.verdict == RiccatiVerdict::none_in_bounds);
    return out;
}

Outcome cmd_antider(const Options& o) {
    Outcome out;
    DiffOperator l = operator_input(o, out);
    int bound = o.bound >= 0 ? o.bound : default_riccati_bound;
    int order = o.order >= 0 ? o.order : 64;
    out.config["search_bound"] = bound;
    out.config["series_order"] = order;
    out.config["assume_irreducible"] = o.assume_irreducible;
    TranscendenceCertificate c = antiderivative_algebraicity(l, bound, o.assume_irreducible);
    out.result["adjoint"] = c.adjoint_op.str();
    out.result["adjoint_equation"] = "L*(v) = 1";
    json hyp = json::array();
    if (c.witness) {
        const auto& w = *c.witness;
        json wj;
        wj["v"] = w.v.str();
        wj["relation"] = w.relation;
        wj["symbolic_check"] = w.symbolic_check;
        out.reverified = w.symbolic_check;
        if (l.leading().coeff(0).is_zero()) {
            wj["series_check"] = "skipped: z = 0 is singular";
        } else {
            SeriesRelationCheck sc = verify_antiderivative_relation(c, order);
            json s;
            s["verified"] = sc.verified;
            s["checked_through"] = sc.checked_through;
            wj["series_check"] = s;
            out.reverified = out.reverified && sc.verified;
        }
        out.result["witness"] = wj;
    } else {
        hyp.push_back("L*(v) = 1 has no solution v in Q(z)");
        if (!c.irreducibility_evidence.empty()) hyp.push_back("L irreducible: " + c.irreducibility_evidence);
    }
    out.result["hypotheses"] = hyp;
    json cav = json::array();
    for (const auto& s : c.caveats) cav.push_back(s);
    out.result["caveats"] = cav;
    out.verdict = to_string(c.verdict);
    out.exit = status_for(out.reverified, c.verdict == AntiderivativeVerdict::inconclusive);
    return out;
}

Outcome cmd_airy_series(const Options& o) {
    Outcome out;
    int order = o.order >= 0 ? o.order : 64;
    out.config["order"] = order;
    AiryBasis b = airy_basis(order);
    out.result["u1"] = b.u1.str();
    out.result["u2"] = b.u2.str();
    DiffOperator airy(std::vector<UniPoly>{-UniPoly::z(), UniPoly(), UniPoly(BigRat(1))});
    bool recursion = ode_series_solve(airy, UniPoly(), {BigRat(1), BigRat(0)}, order) == b.u1 &&
                     ode_series_solve(airy, UniPoly(), {BigRat(0), BigRat(1)}, order) == b.u2;
    TruncSeries w = wronskian(b.u1, b.u2);
    bool constant = w == TruncSeries::constant(BigRat(1), w.order());
    out.result["matches_recursion"] = recursion;
    out.result["wronskian"] = w.str();
    out.result["wronskian_is_one_through"] = w.order();
    out.reverified = recursion && constant;
    out.verdict = out.reverified ? "verified" : "mismatch";
    out.exit = status_for(out.reverified, false);
    return out;
}

Outcome cmd_verify_relation(const Options& o) {
    Outcome out;
    int order = o.order >= 0 ? o.order : 64;
    out.config["order"] = order;
    std::vector<TruncSeries> args = parse_series_list(o.args, order);
    MultiPoly p = parse_polynomial(o.poly, args.size());
    out.inputs["poly"] = p.str();
    out.inputs["args"] = o.args;
    RelationVerdict v = verify_polynomial_relation(p, args, order);
    out.result["kind"] = to_string(v.kind);
    out.result["value"] = v.value.str();
    out.result["first_nonzero"] = v.first_nonzero;
    out.result["checked_through"] = v.checked_through;
    out.verdict = to_string(v.kind);
    if (v.kind == RelationKind::constant) out.verdict += "(" + v.value.str() + ")";
    if (v.kind == RelationKind::nonzero) out.verdict += " at order " + std::to_string(v.first_nonzero);
    out.exit = status_for(true, v.kind == RelationKind::nonzero);
    return out;
}

std::pair<int, int> parse_window(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw Error("window must be lo,hi");
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error("window must be two integers lo,hi, got '" + text + "'");
    }
}

Outcome cmd_growth(const Options& o) {
    Outcome out;
    int order = o.order >= 0 ? o.order : 2000;
    auto window = parse_window(o.window);
    out.inputs["series"] = o.series;
    out.config["order"] = order;
    out.config["window"] = json::array({window.first, window.second});
    std::vector<TruncSeries> s = parse_series_list(o.series, order);
    if (s.size() != 1) throw Error("growth takes exactly one series");
    GrowthReport g = growth_classify(s[0], window);
    out.config["margin"] = g.margin;
    out.config["model"] = "log|x_n| ~ slope*n*log(n) + rate*n + intercept";
    out.result["nonzero_coefficients"] = g.rows.size();
    out.result["a_n_integral"] = g.a_integral;
    out.result["a_prime_n_integral"] = g.a_prime_integral;
    json fit;
    fit["alpha"] = fixed(g.alpha());
    fit["alpha_rate"] = fixed(g.alpha_fit.rate);
    fit["beta"] = fixed(g.beta());
    fit["beta_rate"] = fixed(g.beta_fit.rate);
    out.result["fit"] = fit;
    out.result["columns"] = "n | log|a_n| | log|a'_n| | alpha running | beta running";
    json rows = json::array();
    for (const auto& r : g.rows) {
        std::string line = std::to_string(r.n) + " | " + fixed(r.log_a) + " | " + fixed(r.log_a_prime);
        line += r.running_defined ? " | " + fixed(r.alpha_running) + " | " + fixed(r.beta_running) : " | - | -";
        rows.push_back(line);
    }
    out.result["rows"] = rows;
    out.result["e_verdict"] = to_string(g.e_verdict);
    out.result["g_verdict"] = to_string(g.g_verdict);
    bool decided = g.e_verdict != GrowthVerdict::inconclusive && g.g_verdict != GrowthVerdict::inconclusive;
    out.verdict = to_string(g.e_verdict) + ", " + to_string(g.g_verdict);
    out.exit = status_for(true, !decided);
    return out;
}

Outcome cmd_total_derivative(const Options& o) {
    Outcome out;
    Derivation d = field_derivation(o, out);
    MultiPoly q = poly_for(d, o.poly, "polynomial");
    int order = o.order >= 0 ? o.order : 30;
    out.inputs["poly"] = q.str();
    out.inputs["args"] = o.args;
    out.config["order"] = order;
    std::vector<TruncSeries> sols = parse_series_list(o.args, order);
    TotalDerivativeCheck c = verify_total_derivative(d, q, sols, order);
    out.result["Dq"] = d.apply(q).str();
    out.result["verified"] = c.verified;
    out.result["checked_through"] = c.checked_through;
    out.verdict = c.verified ? "verified" : "mismatch";
    out.exit = status_for(true, !c.verified);
    return out;
}

using Handler = std::function<Outcome(const Options&)>;

struct Verb {
    std::string name;
    std::string help;
    std::vector<std::string> flags;
    Handler run;
};

const std::vector<Verb>& verb_table() {
    static const std::vector<Verb> table{
        {"derive", "apply the field's derivation to a polynomial", {"field", "poly"}, cmd_derive},
        {"cofactor", "decide whether p divides D(p)", {"field", "poly"}, cmd_cofactor},
        {"darboux", "bounded Darboux polynomial search", {"field", "dz", "dy", "dw"}, cmd_darboux},
        {"first-integrals", "bounded polynomial first integrals", {"field", "dz", "dy"}, cmd_first_integrals},
        {"lemma2", "solve D(p) + c*F = 0 in bounds", {"field", "forcing", "dz", "dy"}, cmd_lemma2},
        {"adjoint", "formal adjoint of an operator", {"op"}, cmd_adjoint},
        {"concomitant", "bilinear concomitant of an operator", {"op"}, cmd_concomitant},
        {"lagrange", "check the Lagrange identity symbolically", {"op"}, cmd_lagrange},
        {"ratsolve", "rational solutions of L(u) = rhs", {"op", "rhs"}, cmd_ratsolve},
        {"polysolve", "polynomial solutions of L(u) = rhs", {"op", "rhs", "bound"}, cmd_polysolve},
        {"riccati", "rational solutions of the Riccati equation", {"op", "bound"}, cmd_riccati},
        {"antider", "is an antiderivative of a solution algebraic?", {"op", "bound", "order", "assume"},
         cmd_antider},
        {"airy-series", "Airy fundamental system as exact series", {"order"}, cmd_airy_series},
        {"verify-relation", "substitute series into a polynomial", {"poly", "args", "order"}, cmd_verify_relation},
        {"growth", "coefficient growth exponents of a series", {"series", "window", "order"}, cmd_growth},
        {"total-derivative", "check d/dz q(z, w) = (Dq)(z, w) on series", {"field", "poly", "args", "order"},
         cmd_total_derivative},
    };
    return table;
}

// The verb's main expression when it is read from a file.
std::string* file_target(const Verb& v, Options& o) {
    const auto& f = v.flags;
    auto has = [&](const char* name) { return std::find(f.begin(), f.end(), name) != f.end(); };
    if (has("field")) return &o.field;
    if (has("op")) return &o.op;
    if (has("poly")) return &o.poly;
    if (has("series")) return &o.series;
    return nullptr;
}

void apply_env_config() {
    if (const char* cap = std::getenv("DIFFCERT_DEGREE_CAP")) {
        try {
            int v = std::stoi(cap);
            if (v < 1) throw Error("");
            set_degree_cap(v);
        } catch (const std::exception&) {
            throw Error(std::string("DIFFCERT_DEGREE_CAP must be a positive integer, got '") + cap + "'");
        }
    }
}

}  // namespace

std::vector<std::string> verbs() {
    std::vector<std::string> out;
    for (const auto& v : verb_table()) out.push_back(v.name);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"diffcert: exact certificates for differential-algebra computations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--compare", o.compare, "omit the timing footer");
    app.add_option("--file", o.file, "read the main expression from a file");

    std::map<CLI::App*, const Verb*> subs;
    for (const auto& v : verb_table()) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        subs[sub] = &v;
        for (const auto& f : v.flags) {
            if (f == "field") sub->add_option("--field", o.field, "named field or \"y1' = ...; ...\"");
            if (f == "poly") sub->add_option("--poly", o.poly, "polynomial in z, y1..y9");
            if (f == "op") sub->add_option("--op", o.op, "operator in z and D");
            if (f == "rhs") sub->add_option("--rhs", o.rhs, "right-hand side in z")->capture_default_str();
            if (f == "forcing") sub->add_option("--forcing", o.forcing, "forcing term F")->capture_default_str();
            if (f == "dz") sub->add_option("--dz", o.dz, "max z-degree")->required()->check(CLI::NonNegativeNumber);
            if (f == "dy") sub->add_option("--dy", o.dy, "max y-degree")->required()->check(CLI::NonNegativeNumber);
            if (f == "dw") sub->add_option("--dw", o.dw, "cofactor degree (default: field z-degree)");
            if (f == "bound") sub->add_option("--bound", o.bound, "degree bound")->check(CLI::NonNegativeNumber);
            if (f == "order") sub->add_option("--order", o.order, "series order N")->check(CLI::NonNegativeNumber);
            if (f == "assume") sub->add_flag("--assume-irreducible", o.assume_irreducible, "take irreducibility as given");
            if (f == "args") sub->add_option("--args", o.args, "comma-separated series: z, u1, u1', u2, int(...)");
            if (f == "series") sub->add_option("--series", o.series, "series expression")->capture_default_str();
            if (f == "window") sub->add_option("--window", o.window, "fit window lo,hi")->capture_default_str();
        }
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_verified : exit_error;
    }

    const Verb* verb = nullptr;
    for (auto* s : app.get_subcommands()) verb = subs.at(s);

    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        apply_env_config();
        if (!o.file.empty()) {
            std::string* target = file_target(*verb, o);
            if (!target) throw Error(verb->name + " takes no expression from a file");
            std::ifstream in(o.file);
            if (!in) throw Error("cannot read " + o.file);
            std::stringstream ss;
            ss << in.rdbuf();
            *target = ss.str();
        }
        for (const auto& f : verb->flags) {
            bool missing = (f == "field" && o.field.empty()) || (f == "poly" && o.poly.empty()) ||
                           (f == "op" && o.op.empty()) || (f == "args" && o.args.empty());
            if (missing) throw Error(verb->name + " needs --" + f);
        }
        outcome = verb->run(o);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    json report;
    std::string echo = verb->name;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == verb->name) continue;
        echo += " " + args[i];
    }
    report["command"] = verb->name;
    report["invocation"] = echo;
    report["inputs"] = outcome.inputs;
    outcome.config["degree_cap"] = outcome.config.contains("degree_cap") ? outcome.config["degree_cap"] : json(degree_cap());
    report["config"] = outcome.config;
    report["result"] = outcome.result;
    report["verdict"] = outcome.verdict;
    report["reverified"] = outcome.reverified;
    report["exit_status"] = outcome.exit;
    json timing;
    if (!o.compare) timing["elapsed_ms"] = fixed(ms, 1);
    out << render_report(report, timing, o.format == "json" ? ReportFormat::json : ReportFormat::text);
    return outcome.exit;
}

}  // namespace diffcert::cli
