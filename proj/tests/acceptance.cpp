// One line per acceptance criterion; exit status is the number of failures.

#include "diffcert/cli/commands.hpp"
#include "diffcert/linode.hpp"
#include "diffcert/series.hpp"
#include "diffcert/vfield.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace diffcert;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < limit_s;
    bool ok = o.pass && in_time;
    if (!ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", s, limit_s);
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << o.detail << " (" << timing << ")"
              << (in_time ? "" : " [too slow]") << "\n";
}

MultiPoly Z(std::size_t n) { return MultiPoly::z(n); }
MultiPoly Y(std::size_t n, std::size_t j) { return MultiPoly::y(n, j); }

const UniPoly z = UniPoly::z();
const UniPoly one(BigRat(1));
const DiffOperator airy_op({-z, UniPoly(), one});

PolyVectorField airy2() { return PolyVectorField({Y(2, 2), Z(2) * Y(2, 1)}); }

bool proportional(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return false;
    return a == b * (a.leading_term().second / b.leading_term().second);
}

std::string run_cli(std::vector<std::string> args, int& code) {
    args.insert(args.begin(), {"diffcert", "--format", "json", "--compare"});
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
}

}  // namespace

int main() {
    criterion(1, 120, [] {
        Derivation d = make_derivation(airy2());
        DarbouxSearch s = darboux_search(d, {6, 6}, 1);
        bool reverified = true;
        for (const auto& c : s.certificates()) {
            auto w = cofactor_of(d, c.p);
            reverified = reverified && w && *w == c.cofactor;
        }
        return Outcome{s.only_constants() && reverified,
                       "Airy field, dz=6 dy=6 dw=1: " + std::string(s.only_constants() ? "only constants" : "non-constant Darboux polynomial found")};
    });

    criterion(2, 60, [] {
        AffineDarbouxSolution s = affine_darboux(make_derivation(airy2()), Y(2, 1), {6, 6});
        bool ok = s.only_constant_p() && s.c_forced_zero() && s.basis.size() == 1;
        if (ok) ok = s.basis[0].second.is_zero() && s.basis[0].first.term_count() == 1 &&
                     s.basis[0].first.leading_term().first == Exponents(3, 0);
        return Outcome{ok, "D p + c y1 = 0 in bounds (6, 6): space is {(constant, 0)}"};
    });

    criterion(3, 60, [] {
        auto t0 = std::chrono::steady_clock::now();
        const std::size_t n = 3;
        PolyVectorField au2({Y(n, 2), Z(n) * Y(n, 1), Y(n, 1).pow(2)});
        PolyVectorField p2({Y(n, 2), Z(n) * Y(n, 1) + BigRat(2) * Y(n, 1).pow(3), Y(n, 1).pow(2)});
        MultiPoly e1 = Y(n, 2).pow(2) - Z(n) * Y(n, 1).pow(2) + Y(n, 3);
        MultiPoly e2 = Y(n, 2).pow(2) - Z(n) * Y(n, 1).pow(2) - Y(n, 1).pow(4) + Y(n, 3);
        auto a = first_integrals(make_derivation(au2), {1, 4});
        double ta = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto b = first_integrals(make_derivation(p2), {1, 4});
        double tb = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() - ta;
        bool oa = a.basis.size() == 1 && proportional(a.basis[0], e1) && oracle::derivation(au2.components(), e1).is_zero();
        bool ob = b.basis.size() == 1 && proportional(b.basis[0], e2) && oracle::derivation(p2.components(), e2).is_zero();
        char buf[160];
        std::snprintf(buf, sizeof buf, "airy-u2 %s (%.2f s), painleve2-u2 %s (%.2f s)", oa ? "ok" : "wrong", ta,
                      ob ? "ok" : "wrong", tb);
        return Outcome{oa && ob && ta < 30 && tb < 30, buf};
    });

    criterion(4, 10, [] {
        const std::size_t n = 3;
        Derivation d = make_derivation(PolyVectorField({Y(n, 2), Z(n) * Y(n, 1), Y(n, 1)}));
        Derivation dairy = make_derivation(PolyVectorField({Y(n, 2), Z(n) * Y(n, 1), MultiPoly(n)}));
        gen::Rng rng(404);
        int bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            MultiPoly p = rng.multipoly(n, 8, 4);
            auto q = coefficients_in(p, 3);
            auto dq = coefficients_in(d(p), 3);
            std::size_t top = std::max(q.size(), dq.size());
            for (std::size_t k = 0; k < top; ++k) {
                MultiPoly lhs = k < dq.size() ? dq[k] : MultiPoly(n);
                MultiPoly rhs = k < q.size() ? dairy(q[k]) : MultiPoly(n);
                if (k + 1 < q.size()) rhs += Y(n, 1) * q[k + 1] * BigRat(static_cast<long>(k + 1));
                if (lhs != rhs) ++bad;
            }
        }
        return Outcome{bad == 0, "100 random p: " + std::to_string(bad) + " mismatching coefficients"};
    });

    criterion(5, 10, [] {
        bool self = adjoint(airy_op) == airy_op;
        BilinearConcomitant pi = concomitant(airy_op);
        bool conc = pi.at(1, 0) == one && pi.at(0, 1) == UniPoly(-1) && pi.at(0, 0).is_zero() && pi.at(1, 1).is_zero();
        gen::Rng rng(505);
        int ok = 0;
        for (int trial = 0; trial < 50; ++trial) {
            DiffOperator l = rng.diff_operator(4, 3);
            bool sym = verify_lagrange(l).holds;
            bool num = oracle::lagrange_residual(l, concomitant(l), rng.unipoly(5), rng.unipoly(5)).is_zero();
            ok += sym && num ? 1 : 0;
        }
        return Outcome{self && conc && ok == 50, std::string("self-adjoint ") + (self ? "yes" : "no") +
                                                     ", concomitant " + pi.str() + ", Lagrange " +
                                                     std::to_string(ok) + "/50"};
    });

    criterion(6, 10, [] {
        auto r = rational_solutions(airy_op, one);
        int scan = oracle::relaxed_airy_inhomogeneous_scan(12, 90);
        return Outcome{!r.consistent && scan == 0,
                       std::string("v'' = z v + 1: ") + (r.consistent ? "solution found" : "none") +
                           ", brute-force scan (degrees <= 12): " + std::to_string(scan) + " candidates"};
    });

    criterion(7, 5, [] {
        auto a = riccati_rational_nonexistence(airy_op, 8);
        auto b = riccati_rational_nonexistence(DiffOperator({UniPoly(-1), UniPoly(), one}), 8);
        bool ok_b = b.verdict == RiccatiVerdict::found && b.solutions.size() == 2 &&
                    b.solutions[0] == RatFunc(UniPoly(-1)) && b.solutions[1] == RatFunc(one);
        return Outcome{a.verdict == RiccatiVerdict::nonexistence_certified && ok_b,
                       "D^2 - z: " + to_string(a.verdict) + ", D^2 - 1: " + to_string(b.verdict) +
                           (ok_b ? " w = -1, 1" : "")};
    });

    criterion(8, 10, [] {
        auto t = antiderivative_algebraicity(airy_op, 8);
        bool ok_t = t.verdict == AntiderivativeVerdict::transcendental && !t.irreducibility_evidence.empty();
        auto a = antiderivative_algebraicity(DiffOperator::derivative_power(2), 8);
        bool ok_a = a.verdict == AntiderivativeVerdict::algebraic && a.witness &&
                    a.witness->v == RatFunc(z * z * BigRat(1, 2));
        // independent series check: for u in {1, z}, d/dz(-sum r_i u^(i)) = u
        bool series_ok = ok_a;
        if (ok_a) {
            const int order = 20;
            for (const UniPoly& u : {one, z}) {
                TruncSeries us = TruncSeries::from_poly(u, order);
                TruncSeries acc = TruncSeries::constant(BigRat(0), order);
                TruncSeries ui = us;
                for (const auto& r : a.witness->relation_coefficients) {
                    acc = acc - multiply(series_of(r, order), ui);
                    ui = derivative(ui);
                }
                TruncSeries lhs = derivative(acc);
                series_ok = series_ok && lhs == us.truncated(lhs.order());
            }
            series_ok = series_ok && verify_antiderivative_relation(a, 64).verified;
        }
        return Outcome{ok_t && ok_a && series_ok,
                       "D^2 - z: " + to_string(t.verdict) + " (" + t.irreducibility_evidence + "); D^2: " +
                           to_string(a.verdict) + (a.witness ? ", " + a.witness->relation : "") +
                           (series_ok ? ", series check ok" : ", series check failed")};
    });

    criterion(9, 10, [] {
        AiryBasis b = airy_basis(12);
        auto f = [](int n) { return BigRat(BigInt(factorial(static_cast<unsigned long>(n)))); };
        bool shown = b.u1.coeff(0) == BigRat(1) && b.u1.coeff(3) == BigRat(1) / f(3) &&
                     b.u1.coeff(6) == BigRat(4) / f(6) && b.u2.coeff(1) == BigRat(1) &&
                     b.u2.coeff(4) == BigRat(2) / f(4) && b.u2.coeff(7) == BigRat(10) / f(7);
        for (int k = 0; k <= 12; ++k) {
            if (k % 3 != 0) shown = shown && b.u1.coeff(k).is_zero();
            if (k % 3 != 1) shown = shown && b.u2.coeff(k).is_zero();
        }
        AiryBasis big = airy_basis(64);
        TruncSeries w = wronskian(big.u1, big.u2);
        bool wr = w.order() >= 62;
        for (int k = 0; k <= 62 && wr; ++k) wr = w.coeff(k) == BigRat(k == 0 ? 1 : 0);
        std::vector<TruncSeries> args{big.u1, derivative(big.u1), antiderivative(multiply(big.u1, big.u1), BigRat(0))};
        auto rel = verify_polynomial_relation(Y(3, 2).pow(2) - Z(3) * Y(3, 1).pow(2) + Y(3, 3), args, 40);
        bool rel_ok = rel.kind == RelationKind::identically_zero && rel.checked_through == 40;
        return Outcome{shown && wr && rel_ok, std::string("displayed coefficients ") + (shown ? "match" : "differ") +
                                                  ", Wronskian " + (wr ? "1 through 62" : "not constant") +
                                                  ", relation " + to_string(rel.kind) + " through " +
                                                  std::to_string(rel.checked_through)};
    });

    criterion(10, 60, [] {
        AiryBasis b = airy_basis(2000);
        GrowthReport g = growth_classify(b.u1, {300, 600});
        bool ok = std::abs(g.alpha() - 1.0 / 3) < 0.1 && std::abs(g.beta() - 2.0 / 3) < 0.1 &&
                  g.e_verdict == GrowthVerdict::not_e_function && g.g_verdict == GrowthVerdict::not_g_function;
        char buf[200];
        std::snprintf(buf, sizeof buf, "alpha %.4f (%s), beta %.4f (%s)", g.alpha(), to_string(g.e_verdict).c_str(),
                      g.beta(), to_string(g.g_verdict).c_str());
        return Outcome{ok, buf};
    });

    criterion(11, 300, [] {
        std::vector<std::vector<std::string>> cmds{
            {"darboux", "--field", "airy2", "--dz", "6", "--dy", "6", "--dw", "1"},
            {"lemma2", "--field", "airy2", "--dz", "6", "--dy", "6"},
            {"first-integrals", "--field", "airy-u2", "--dz", "1", "--dy", "4"},
            {"first-integrals", "--field", "painleve2-u2", "--dz", "1", "--dy", "4"},
            {"derive", "--field", "airy3", "--poly", "y2^2 - z*y1^2 + y3"},
            {"cofactor", "--field", "airy-u2", "--poly", "y2^2 - z*y1^2 + y3"},
            {"adjoint", "--op", "D^2 - z"},
            {"concomitant", "--op", "D^2 - z"},
            {"lagrange", "--op", "D^2 - z"},
            {"ratsolve", "--op", "D^2 - z", "--rhs", "1"},
            {"polysolve", "--op", "D^2", "--rhs", "1"},
            {"riccati", "--op", "D^2 - z"},
            {"riccati", "--op", "D^2 - 1"},
            {"antider", "--op", "D^2 - z"},
            {"antider", "--op", "D^2"},
            {"airy-series", "--order", "12"},
            {"verify-relation", "--poly", "y2^2 - z*y1^2 + y3", "--args", "u1, u1', int(u1^2)", "--order", "40"},
            {"growth", "--series", "u1", "--order", "2000", "--window", "300,600"},
            {"total-derivative", "--field", "airy-u2", "--poly", "y2^2 - z*y1^2 + y3", "--args", "u1, u1', int(u1^2)"},
        };
        int identical = 0, errors = 0;
        for (const auto& c : cmds) {
            int code1 = 0, code2 = 0;
            std::string a = run_cli(c, code1), b = run_cli(c, code2);
            if (code1 == cli::exit_error || code2 == cli::exit_error || a.empty()) ++errors;
            if (a == b && code1 == code2) ++identical;
        }
        return Outcome{errors == 0 && identical == static_cast<int>(cmds.size()),
                       std::to_string(identical) + "/" + std::to_string(cmds.size()) +
                           " commands byte-identical in comparison mode, " + std::to_string(errors) + " errors"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
