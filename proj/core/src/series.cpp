#include "diffcert/series.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <array>
#include <cmath>

namespace diffcert {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;

Real log_abs(const BigRat& q) {
    Real num, den;
    mpfr_set_z(num.backend().data(), q.num().get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.backend().data(), q.den().get_mpz_t(), MPFR_RNDN);
    return log(abs(num)) - log(den);
}

struct NormalEquations {
    std::array<std::array<Real, 3>, 3> xtx{};
    std::array<Real, 3> xty{};
    int count = 0;

    void add(const std::array<Real, 3>& x, const Real& y) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) xtx[i][j] += x[i] * x[j];
            xty[i] += x[i] * y;
        }
        ++count;
    }

    bool solve(GrowthFit& fit) const {
        if (count < 3) return false;
        auto a = xtx;
        auto b = xty;
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r) {
                if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
            }
            if (a[piv][c] == 0) return false;
            std::swap(a[c], a[piv]);
            std::swap(b[c], b[piv]);
            for (int r = c + 1; r < 3; ++r) {
                Real f = a[r][c] / a[c][c];
                for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
                b[r] -= f * b[c];
            }
        }
        std::array<Real, 3> x;
        for (int r = 2; r >= 0; --r) {
            Real acc = b[r];
            for (int k = r + 1; k < 3; ++k) acc -= a[r][k] * x[k];
            x[r] = acc / a[r][r];
        }
        fit.slope = x[0].convert_to<double>();
        fit.rate = x[1].convert_to<double>();
        fit.intercept = x[2].convert_to<double>();
        return true;
    }
};

}  // namespace

TruncSeries ode_series_solve(const DiffOperator& l, const UniPoly& rhs, const std::vector<BigRat>& initial,
                             int order) {
    const int n = l.order();
    if (static_cast<int>(initial.size()) != n) {
        throw Error("operator of order " + std::to_string(n) + " needs " + std::to_string(n) +
                    " initial values, got " + std::to_string(initial.size()));
    }
    if (order < 0) throw Error("series order must be nonnegative");
    const BigRat lead0 = l.leading().coeff(0);
    if (lead0.is_zero()) throw Error("z = 0 is a singular point of " + l.str());

    std::vector<BigRat> u(static_cast<std::size_t>(std::max(order, n - 1)) + 1);
    for (int i = 0; i < n; ++i) u[i] = initial[i] / BigRat(factorial(static_cast<unsigned long>(i)));

    // [z^k] L(u) = sum_i sum_j a_{i,j} (k-j+i)^(i falling) u_{k-j+i}; u_{k+n} only from i = n, j = 0.
    for (int k = 0; k + n <= order; ++k) {
        BigRat acc = rhs.coeff(k);
        for (int i = 0; i <= n; ++i) {
            const UniPoly& a = l.coefficient(i);
            for (int j = 0; j <= a.degree(); ++j) {
                int idx = k - j + i;
                if (idx < 0 || (i == n && j == 0)) continue;
                const BigRat& c = a.coeff(j);
                if (c.is_zero() || u[idx].is_zero()) continue;
                acc -= c * BigRat(falling_factorial(idx, i)) * u[idx];
            }
        }
        u[k + n] = acc / (lead0 * BigRat(falling_factorial(k + n, n)));
    }
    u.resize(static_cast<std::size_t>(order) + 1);
    return TruncSeries(std::move(u), order);
}

AiryBasis airy_basis(int order) {
    if (order < 2) throw Error("Airy basis needs order >= 2");
    std::vector<BigRat> c1(static_cast<std::size_t>(order) + 1), c2(static_cast<std::size_t>(order) + 1);
    c1[0] = BigRat(1);
    c2[1] = BigRat(1);
    for (int k = 3; k <= order; ++k) {
        // (k)(k-1) c_k = c_{k-3}
        BigRat f(1, static_cast<long>(k) * (k - 1));
        c1[k] = c1[k - 3] * f;
        c2[k] = c2[k - 3] * f;
    }
    return {TruncSeries(std::move(c1), order), TruncSeries(std::move(c2), order)};
}

TruncSeries wronskian(const TruncSeries& u, const TruncSeries& v) {
    return multiply(u, derivative(v)) - multiply(derivative(u), v);
}

RelationVerdict verify_polynomial_relation(const MultiPoly& p, std::span<const TruncSeries> args, int order) {
    TruncSeries s = substitute(p, args, order);
    RelationVerdict out;
    out.checked_through = s.order();
    out.value = s.coeff(0);
    for (int k = 0; k <= s.order(); ++k) {
        if (!s.coeff(k).is_zero()) {
            out.first_nonzero = k;
            break;
        }
    }
    if (out.first_nonzero < 0) {
        out.kind = RelationKind::identically_zero;
        return out;
    }
    bool constant = true;
    for (int k = 1; k <= s.order(); ++k) constant = constant && s.coeff(k).is_zero();
    out.kind = constant ? RelationKind::constant : RelationKind::nonzero;
    return out;
}

std::string to_string(RelationKind k) {
    switch (k) {
        case RelationKind::identically_zero: return "identically-zero-to-order";
        case RelationKind::constant: return "constant-to-order";
        case RelationKind::nonzero: return "nonzero";
    }
    return "?";
}

GrowthReport growth_classify(const TruncSeries& s, std::pair<int, int> window, double margin) {
    const auto [lo, hi] = window;
    if (lo < 0 || hi < lo) throw Error("invalid growth window");
    if (hi > s.order()) {
        throw Error("window end " + std::to_string(hi) + " exceeds series order " + std::to_string(s.order()));
    }
    GrowthReport rep;
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.margin = margin;

    NormalEquations fa, fb;
    BigInt fact = factorial(static_cast<unsigned long>(lo));
    for (int n = lo; n <= hi; ++n) {
        if (n > lo) fact *= n;
        const BigRat& c = s.coeff(n);
        if (c.is_zero()) continue;
        GrowthRow row;
        row.n = n;
        row.a = c * BigRat(fact);
        row.a_prime = c.inverse();
        rep.a_integral = rep.a_integral && row.a.is_integer();
        rep.a_prime_integral = rep.a_prime_integral && row.a_prime.is_integer();
        Real la = log_abs(row.a), lb = log_abs(row.a_prime);
        row.log_a = la.convert_to<double>();
        row.log_a_prime = lb.convert_to<double>();
        Real rn(n);
        std::array<Real, 3> x{rn * log(rn), rn, Real(1)};
        fa.add(x, la);
        fb.add(x, lb);
        GrowthFit ra, rb;
        if (fa.solve(ra) && fb.solve(rb)) {
            row.alpha_running = ra.slope;
            row.beta_running = rb.slope;
            row.running_defined = true;
        }
        rep.rows.push_back(std::move(row));
    }
    if (rep.rows.size() < 10) {
        throw Error("growth fit needs at least 10 nonzero coefficients in the window, found " +
                    std::to_string(rep.rows.size()));
    }
    if (!fa.solve(rep.alpha_fit) || !fb.solve(rep.beta_fit)) throw Error("growth fit is singular");
    rep.e_verdict = rep.alpha() > margin ? GrowthVerdict::not_e_function : GrowthVerdict::inconclusive;
    rep.g_verdict = rep.beta() > margin ? GrowthVerdict::not_g_function : GrowthVerdict::inconclusive;
    return rep;
}

std::string to_string(GrowthVerdict v) {
    switch (v) {
        case GrowthVerdict::not_e_function: return "not-E-function";
        case GrowthVerdict::not_g_function: return "not-G-function";
        case GrowthVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

SeriesRelationCheck verify_antiderivative_relation(const TranscendenceCertificate& cert, int order) {
    if (!cert.witness) throw Error("certificate carries no relation to check");
    const DiffOperator& l = cert.op;
    const int n = l.order();
    if (order < n + 1) throw Error("series order too small for the relation check");
    const auto& r = cert.witness->relation_coefficients;
    std::vector<TruncSeries> rs;
    for (const auto& ri : r) {
        if (ri.den().coeff(0).is_zero()) throw Error("relation coefficient " + ri.str() + " has a pole at 0");
        rs.push_back(series_of(ri, order));
    }
    SeriesRelationCheck out;
    out.verified = true;
    out.checked_through = order - n;
    for (int b = 0; b < n; ++b) {
        std::vector<BigRat> init(static_cast<std::size_t>(n));
        init[b] = BigRat(1);
        TruncSeries u = ode_series_solve(l, UniPoly(), init, order);
        TruncSeries acc = TruncSeries::constant(BigRat(0), order);
        TruncSeries du = u;
        for (int i = 0; i < n; ++i) {
            if (i) du = derivative(du);
            acc = acc - multiply(rs[i], du);
        }
        TruncSeries lhs = derivative(acc).truncated(out.checked_through);
        if (!(lhs == u.truncated(out.checked_through))) out.verified = false;
        out.basis.push_back(std::move(u));
    }
    return out;
}

}  // namespace diffcert
