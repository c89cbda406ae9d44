#include "diffcert/linode.hpp"

#include "diffcert/linalg.hpp"
#include "diffcert/vfield.hpp"

#include <algorithm>

namespace diffcert {

DiffOperator::DiffOperator(std::vector<UniPoly> coefficients) : coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) throw Error("zero differential operator");
}

DiffOperator DiffOperator::derivative_power(int k) {
    if (k < 0) throw Error("negative derivative order");
    std::vector<UniPoly> c(static_cast<std::size_t>(k) + 1);
    c.back() = UniPoly(BigRat(1));
    return DiffOperator(std::move(c));
}

DiffOperator DiffOperator::multiplication(const UniPoly& a) { return DiffOperator(std::vector<UniPoly>{a}); }

const UniPoly& DiffOperator::coefficient(int i) const {
    static const UniPoly zero;
    if (i < 0 || i > order()) return zero;
    return coeffs_[static_cast<std::size_t>(i)];
}

UniPoly DiffOperator::apply(const UniPoly& u) const {
    UniPoly acc;
    UniPoly du = u;
    for (int i = 0; i <= order(); ++i) {
        if (i) du = du.derivative();
        if (du.is_zero()) break;
        acc += coeffs_[i] * du;
    }
    return acc;
}

RatFunc DiffOperator::apply(const RatFunc& u) const {
    RatFunc acc;
    RatFunc du = u;
    for (int i = 0; i <= order(); ++i) {
        if (i) du = du.derivative();
        if (!coeffs_[i].is_zero()) acc = acc + RatFunc(coeffs_[i]) * du;
    }
    return acc;
}

DiffOperator DiffOperator::compose(const DiffOperator& rhs) const {
    // a D^i o b D^j = a sum_k C(i,k) b^(k) D^(i-k+j)
    std::vector<UniPoly> out(static_cast<std::size_t>(order() + rhs.order()) + 1);
    for (int i = 0; i <= order(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (int j = 0; j <= rhs.order(); ++j) {
            UniPoly b = rhs.coeffs_[j];
            for (int k = 0; k <= i && !b.is_zero(); ++k) {
                out[static_cast<std::size_t>(i - k + j)] +=
                    coeffs_[i] * b * BigRat(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(k)));
                b = b.derivative();
            }
        }
    }
    return DiffOperator(std::move(out));
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    std::vector<UniPoly> c(static_cast<std::size_t>(std::max(a.order(), b.order())) + 1);
    for (int i = 0; i <= a.order(); ++i) c[i] += a.coeffs_[i];
    for (int i = 0; i <= b.order(); ++i) c[i] += b.coeffs_[i];
    return DiffOperator(std::move(c));
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
    std::vector<UniPoly> c(static_cast<std::size_t>(std::max(a.order(), b.order())) + 1);
    for (int i = 0; i <= a.order(); ++i) c[i] += a.coeffs_[i];
    for (int i = 0; i <= b.order(); ++i) c[i] -= b.coeffs_[i];
    return DiffOperator(std::move(c));
}

std::string DiffOperator::str() const {
    std::string out;
    for (int i = order(); i >= 0; --i) {
        const UniPoly& a = coeffs_[i];
        if (a.is_zero()) continue;
        std::string d = i == 0 ? "" : (i == 1 ? "D" : "D^" + std::to_string(i));
        if (i == 0) {
            std::string s = a.str();
            if (out.empty()) {
                out = s;
            } else if (s[0] == '-') {
                out += " - " + s.substr(1);
            } else {
                out += " + " + s;
            }
            continue;
        }
        std::string term;
        bool negative = false;
        int nonzero = 0;
        for (const auto& c : a.coefficients()) nonzero += c.is_zero() ? 0 : 1;
        if (nonzero == 1) {
            negative = a.leading().sign() < 0;
            UniPoly mag = negative ? -a : a;
            std::string m = mag.str();
            term = m == "1" ? d : m + "*" + d;
        } else {
            term = "(" + a.str() + ")*" + d;
        }
        if (out.empty()) {
            out = (negative ? "-" : "") + term;
        } else {
            out += (negative ? " - " : " + ") + term;
        }
    }
    return out;
}

DiffOperator adjoint(const DiffOperator& l) {
    const int n = l.order();
    std::vector<UniPoly> b(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        UniPoly a = l.coefficient(i);
        BigRat sign(i % 2 == 0 ? 1 : -1);
        // (a v)^(i) = sum_m C(i, m) a^(i-m) v^(m)
        for (int m = 0; m <= i; ++m) {
            UniPoly da = a.derivative(i - m);
            if (da.is_zero()) continue;
            b[m] += da * (sign * BigRat(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(m))));
        }
    }
    return DiffOperator(std::move(b));
}

std::string derivative_name(const std::string& base, int k) {
    if (k <= 3) return base + std::string(static_cast<std::size_t>(k), '\'');
    return base + "^(" + std::to_string(k) + ")";
}

const UniPoly& BilinearConcomitant::at(int i, int j) const {
    static const UniPoly zero;
    if (i < 0 || j < 0 || i >= order || j >= order) return zero;
    return table[i][j];
}

std::string BilinearConcomitant::str() const {
    // Variables: z, u..u^(n-1), v..v^(n-1).
    const std::size_t n = static_cast<std::size_t>(order);
    std::vector<std::string> names{"z"};
    for (int i = 0; i < order; ++i) names.push_back(derivative_name("u", i));
    for (int j = 0; j < order; ++j) names.push_back(derivative_name("v", j));
    MultiPoly p(2 * n);
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            const UniPoly& c = table[i][j];
            for (int k = 0; k <= c.degree(); ++k) {
                Exponents e(2 * n + 1, 0);
                e[0] = static_cast<std::uint32_t>(k);
                e[1 + i] = 1;
                e[1 + n + j] = 1;
                p.add_term(e, c.coeff(k));
            }
        }
    }
    return p.str(names);
}

BilinearConcomitant concomitant(const DiffOperator& l) {
    const int n = l.order();
    BilinearConcomitant pi;
    pi.order = n;
    pi.table.assign(static_cast<std::size_t>(n), std::vector<UniPoly>(static_cast<std::size_t>(n)));
    // pi = sum_{i=1}^n sum_{k=0}^{i-1} (-1)^k u^(i-1-k) (a_i v)^(k)
    for (int i = 1; i <= n; ++i) {
        const UniPoly& a = l.coefficient(i);
        if (a.is_zero()) continue;
        for (int k = 0; k < i; ++k) {
            BigRat sign(k % 2 == 0 ? 1 : -1);
            for (int m = 0; m <= k; ++m) {
                UniPoly da = a.derivative(k - m);
                if (da.is_zero()) continue;
                pi.table[i - 1 - k][m] +=
                    da * (sign * BigRat(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(m))));
            }
        }
    }
    return pi;
}

LagrangeCheck verify_lagrange(const DiffOperator& l) {
    const int n = l.order();
    // y_{1+i} = u^(i), y_{n+2+i} = v^(i), i = 0..n
    const std::size_t nv = 2 * static_cast<std::size_t>(n) + 2;
    auto uvar = [](int i) { return static_cast<std::size_t>(1 + i); };
    auto vvar = [n](int i) { return static_cast<std::size_t>(n + 2 + i); };

    std::vector<MultiPoly> shift(nv, MultiPoly(nv));
    for (int i = 0; i < n; ++i) {
        shift[uvar(i) - 1] = MultiPoly::y(nv, uvar(i + 1));
        shift[vvar(i) - 1] = MultiPoly::y(nv, vvar(i + 1));
    }
    Derivation d(PolyVectorField(std::move(shift)));

    const DiffOperator ls = adjoint(l);
    MultiPoly lu(nv), lsv(nv);
    for (int i = 0; i <= n; ++i) {
        lu += MultiPoly::from_univariate(nv, l.coefficient(i)) * MultiPoly::y(nv, uvar(i));
        lsv += MultiPoly::from_univariate(nv, ls.coefficient(i)) * MultiPoly::y(nv, vvar(i));
    }
    const BilinearConcomitant pi = concomitant(l);
    MultiPoly pip(nv);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const UniPoly& c = pi.at(i, j);
            if (c.is_zero()) continue;
            pip += MultiPoly::from_univariate(nv, c) * MultiPoly::y(nv, uvar(i)) * MultiPoly::y(nv, vvar(j));
        }
    }
    LagrangeCheck out;
    out.residual = MultiPoly::y(nv, vvar(0)) * lu - MultiPoly::y(nv, uvar(0)) * lsv - d.apply(pip);
    out.holds = out.residual.is_zero();
    out.variable_names.push_back("z");
    for (int i = 0; i <= n; ++i) out.variable_names.push_back(derivative_name("u", i));
    for (int i = 0; i <= n; ++i) out.variable_names.push_back(derivative_name("v", i));
    return out;
}

PolySolutionSpace polynomial_solutions(const DiffOperator& l, const UniPoly& rhs, int cap) {
    if (cap < 0) cap = degree_cap();
    const int n = l.order();
    // L(z^m) = P(m) z^(m+s) + lower, with s = max(deg a_i - i).
    int s = std::numeric_limits<int>::min();
    for (int i = 0; i <= n; ++i) {
        if (!l.coefficient(i).is_zero()) s = std::max(s, l.coefficient(i).degree() - i);
    }
    UniPoly indicial;
    for (int i = 0; i <= n; ++i) {
        const UniPoly& a = l.coefficient(i);
        if (!a.is_zero() && a.degree() - i == s) indicial += falling_factorial_poly(i) * a.leading();
    }
    int bound = UniPoly::minus_infinity;
    for (const auto& r : rational_roots(indicial)) {
        if (r.value.is_integer() && r.value.sign() >= 0) {
            bound = std::max(bound, static_cast<int>(r.value.num().get_si()));
        }
    }
    if (!rhs.is_zero()) bound = std::max(bound, rhs.degree() - s);

    PolySolutionSpace out;
    if (bound > cap) {
        bound = cap;
        out.capped = true;
    }
    out.degree_bound = bound < 0 ? UniPoly::minus_infinity : bound;
    if (bound < 0) {
        out.consistent = rhs.is_zero();
        return out;
    }
    std::vector<UniPoly> images;
    int top = rhs.degree();
    for (int k = 0; k <= bound; ++k) {
        images.push_back(l.apply(UniPoly::monomial(BigRat(1), k)));
        top = std::max(top, images.back().degree());
    }
    top = std::max(top, 0);
    Matrix m(static_cast<std::size_t>(top) + 1, images.size());
    for (std::size_t k = 0; k < images.size(); ++k) {
        for (int r = 0; r <= images[k].degree(); ++r) m.at(static_cast<std::size_t>(r), k) = images[k].coeff(r);
    }
    std::vector<BigRat> b(static_cast<std::size_t>(top) + 1);
    for (int r = 0; r <= rhs.degree(); ++r) b[static_cast<std::size_t>(r)] = rhs.coeff(r);
    AffineSolution sol = solve_affine(m, b);
    out.consistent = sol.consistent;
    if (!sol.consistent) return out;
    out.particular = UniPoly(sol.particular);
    for (auto& h : sol.homogeneous) out.homogeneous.emplace_back(std::move(h));
    return out;
}

RatSolutionSpace rational_solutions(const DiffOperator& l, const UniPoly& rhs) {
    const int n = l.order();
    const UniPoly& lead = l.leading();
    RatSolutionSpace out;
    if (lead.degree() >= 1 && !splits_over_q(lead)) {
        throw Error("denominator bound unavailable: leading coefficient " + lead.str() + " does not split over Q");
    }
    UniPoly denom(BigRat(1));
    if (lead.degree() >= 1) {
        for (const auto& root : rational_roots(lead)) {
            SingularPoint sp;
            sp.point = root.value;
            sp.multiplicity = root.multiplicity;
            // Lowest-order term of L((z - a)^t) at z = a.
            int h = std::numeric_limits<int>::max();
            std::vector<UniPoly> shifted;
            for (int i = 0; i <= n; ++i) {
                shifted.push_back(l.coefficient(i).taylor_shift(root.value));
                if (!shifted.back().is_zero()) h = std::min(h, shifted.back().valuation_at(BigRat(0)) - i);
            }
            for (int i = 0; i <= n; ++i) {
                if (shifted[i].is_zero()) continue;
                int v = shifted[i].valuation_at(BigRat(0));
                if (v - i == h) sp.indicial += falling_factorial_poly(i) * shifted[i].coeff(v);
            }
            int mu = 0;
            for (const auto& r : rational_roots(sp.indicial)) {
                if (r.value.is_integer() && r.value.sign() < 0) {
                    mu = std::max(mu, static_cast<int>(-r.value.num().get_si()));
                }
            }
            // With a polynomial right-hand side, a pole of order <= h may survive
            // without the indicial condition.
            if (!rhs.is_zero()) mu = std::max(mu, h);
            sp.pole_bound = mu;
            denom *= UniPoly(std::vector<BigRat>{-root.value, BigRat(1)}).pow(static_cast<unsigned>(mu));
            out.singular_points.push_back(std::move(sp));
        }
    }
    out.denominator = denom;

    PolySolutionSpace ps;
    if (denom.degree() == 0) {
        ps = polynomial_solutions(l, rhs);
    } else {
        // M(N) = d^(n+1) L(N / d), using (1/d)^(k) = P_k / d^(k+1).
        std::vector<UniPoly> p_k{UniPoly(BigRat(1))};
        for (int k = 0; k < n; ++k) {
            p_k.push_back(p_k[k].derivative() * denom - denom.derivative() * p_k[k] * BigRat(k + 1));
        }
        std::vector<UniPoly> dpow{UniPoly(BigRat(1))};
        for (int k = 1; k <= n; ++k) dpow.push_back(dpow.back() * denom);
        std::vector<UniPoly> mcoef(static_cast<std::size_t>(n) + 1);
        for (int m = 0; m <= n; ++m) {
            for (int i = m; i <= n; ++i) {
                const UniPoly& a = l.coefficient(i);
                if (a.is_zero()) continue;
                mcoef[m] += a * p_k[i - m] * dpow[n - (i - m)] *
                            BigRat(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(m)));
            }
        }
        ps = polynomial_solutions(DiffOperator(std::move(mcoef)), rhs * dpow[n] * denom);
    }
    out.consistent = ps.consistent;
    out.capped = ps.capped;
    if (!ps.consistent) return out;
    out.particular = RatFunc(ps.particular, denom);
    for (const auto& h : ps.homogeneous) out.homogeneous.emplace_back(h, denom);
    return out;
}

namespace {

// g with deg(g^2 - p) < deg g, for p of even degree 2r with square leading coefficient.
bool polynomial_sqrt_part(const UniPoly& p, UniPoly& g) {
    if (p.is_zero() || p.degree() % 2 != 0) return false;
    BigRat lead;
    if (!rational_sqrt(p.leading(), lead)) return false;
    const int r = p.degree() / 2;
    std::vector<BigRat> c(static_cast<std::size_t>(r) + 1);
    c[r] = lead;
    for (int k = r - 1; k >= 0; --k) {
        // coefficient of z^(r+k) in g^2 from the already known part
        BigRat known;
        for (int i = k + 1; i <= r; ++i) {
            int j = r + k - i;
            if (j > k && j <= r) known += c[i] * c[j];
        }
        c[k] = (p.coeff(r + k) - known) / (BigRat(2) * lead);
    }
    g = UniPoly(std::move(c));
    return true;
}

bool ratfunc_less(const RatFunc& a, const RatFunc& b) {
    if (!(a.num() == b.num())) return poly_less(a.num(), b.num());
    return poly_less(a.den(), b.den());
}

}  // namespace

RiccatiResult riccati_rational_nonexistence(const DiffOperator& l, int search_bound) {
    if (l.order() != 2) throw Error("Riccati analysis needs an order-2 operator");
    if (l.leading().degree() != 0) throw Error("Riccati analysis needs a constant leading coefficient");
    if (search_bound < 0) throw Error("search bound must be nonnegative");
    const BigRat inv = l.leading().leading().inverse();
    const UniPoly a1 = l.coefficient(1) * inv;
    const UniPoly a0 = l.coefficient(0) * inv;

    RiccatiResult out;
    out.search_bound = search_bound;
    if (!a0.is_zero() && a0.degree() % 2 == 1 && (a1.is_zero() || a0.degree() >= 2 * (1 + a1.degree()))) {
        out.verdict = RiccatiVerdict::nonexistence_certified;
        out.certificate = "expansion at infinity: deg a0 = " + std::to_string(a0.degree()) +
                          " is odd and dominates a1, so w^2 ~ -a0 would need half-integer degree";
        return out;
    }

    // Normal form y'' + r y = 0 with w = W - a1/2, W = f'/f + g.
    const UniPoly r = a0 - a1 * a1 * BigRat(1, 4) - a1.derivative() * BigRat(1, 2);
    const UniPoly target = -r;
    std::vector<UniPoly> candidates;
    UniPoly root;
    if (target.is_zero()) {
        candidates.push_back(UniPoly());
    } else if (polynomial_sqrt_part(target, root)) {
        candidates.push_back(root);
        candidates.push_back(-root);
    }
    std::sort(candidates.begin(), candidates.end(), poly_less);

    std::vector<RatFunc> found;
    for (const auto& g : candidates) {
        if (!g.is_zero() && g.degree() > search_bound) continue;
        DiffOperator m(std::vector<UniPoly>{g.derivative() + g * g + r, g * BigRat(2), UniPoly(BigRat(1))});
        PolySolutionSpace ps = polynomial_solutions(m, UniPoly(), search_bound);
        for (const auto& f : ps.homogeneous) {
            RatFunc w = RatFunc(f.derivative(), f) + RatFunc(g) - RatFunc(a1 * BigRat(1, 2));
            if (std::find(found.begin(), found.end(), w) == found.end()) found.push_back(w);
        }
    }
    std::sort(found.begin(), found.end(), ratfunc_less);
    out.solutions = std::move(found);
    if (!out.solutions.empty()) {
        out.verdict = RiccatiVerdict::found;
        out.certificate = "rational Riccati solution: L has a first-order right factor D - w";
    } else {
        out.verdict = RiccatiVerdict::none_in_bounds;
        out.certificate = "no w = f'/f + g with deg f, deg g <= " + std::to_string(search_bound);
    }
    return out;
}

namespace {

std::string render_relation(const std::vector<RatFunc>& r) {
    const int n = static_cast<int>(r.size());
    bool polynomial = std::all_of(r.begin(), r.end(), [](const RatFunc& f) { return f.is_polynomial(); });
    std::string body;
    if (polynomial) {
        std::vector<std::string> names{"z"};
        for (int i = 0; i < n; ++i) names.push_back(derivative_name("u", i));
        MultiPoly p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            p += MultiPoly::from_univariate(static_cast<std::size_t>(n), r[i].num()) *
                 MultiPoly::y(static_cast<std::size_t>(n), static_cast<std::size_t>(i + 1));
        }
        body = p.str(names);
    } else {
        for (int i = n - 1; i >= 0; --i) {
            if (r[i].is_zero()) continue;
            if (!body.empty()) body += " + ";
            body += "(" + r[i].str() + ")*" + derivative_name("u", i);
        }
        if (body.empty()) body = "0";
    }
    return "U = c - (" + body + ")";
}

// d/dz(-sum r_i u^(i)) reduced with L(u) = 0 must equal u.
bool relation_derivative_is_u(const DiffOperator& l, const std::vector<RatFunc>& r) {
    const int n = l.order();
    std::vector<RatFunc> e(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        e[i] = e[i] - r[i].derivative();
        e[i + 1] = e[i + 1] - r[i];
    }
    const RatFunc lead(l.leading());
    for (int k = 0; k < n; ++k) e[k] = e[k] - e[n] * RatFunc(l.coefficient(k)) / lead;
    if (!(e[0] == RatFunc(BigRat(1)))) return false;
    for (int k = 1; k < n; ++k) {
        if (!e[k].is_zero()) return false;
    }
    return true;
}

}  // namespace

TranscendenceCertificate antiderivative_algebraicity(const DiffOperator& l, int search_bound,
                                                     bool assume_irreducible) {
    TranscendenceCertificate cert{l, adjoint(l), AntiderivativeVerdict::inconclusive, std::nullopt, "", {}};
    const RatSolutionSpace rs = rational_solutions(cert.adjoint_op, UniPoly(BigRat(1)));
    if (rs.capped) cert.caveats.push_back("polynomial degree bound was capped; adjoint solve may be incomplete");

    if (rs.consistent) {
        AntiderivativeWitness w;
        w.v = rs.particular;
        const BilinearConcomitant pi = concomitant(l);
        std::vector<RatFunc> dv{w.v};
        for (int j = 1; j < l.order(); ++j) dv.push_back(dv.back().derivative());
        for (int i = 0; i < l.order(); ++i) {
            RatFunc ri;
            for (int j = 0; j < l.order(); ++j) {
                if (!pi.at(i, j).is_zero()) ri = ri + RatFunc(pi.at(i, j)) * dv[j];
            }
            w.relation_coefficients.push_back(ri);
        }
        w.relation = render_relation(w.relation_coefficients);
        w.symbolic_check = relation_derivative_is_u(l, w.relation_coefficients);
        cert.witness = std::move(w);
        cert.verdict = AntiderivativeVerdict::algebraic;
        cert.irreducibility_evidence = "not needed for the algebraic direction";
        return cert;
    }

    if (l.order() == 1) {
        cert.irreducibility_evidence = "order-1 operators are irreducible";
    } else if (l.order() == 2 && l.leading().degree() == 0) {
        RiccatiResult rr = riccati_rational_nonexistence(l, search_bound);
        switch (rr.verdict) {
            case RiccatiVerdict::nonexistence_certified:
                cert.irreducibility_evidence = "Riccati nonexistence certificate (" + rr.certificate + ")";
                break;
            case RiccatiVerdict::found:
                cert.caveats.push_back("w = " + rr.solutions.front().str() +
                                       " solves the Riccati equation; L is reducible");
                break;
            case RiccatiVerdict::none_in_bounds:
                cert.caveats.push_back("Riccati search found nothing within degree " +
                                       std::to_string(search_bound) + "; not a proof of irreducibility");
                break;
        }
    } else {
        cert.caveats.push_back("no irreducibility test available for this operator");
    }
    if (cert.irreducibility_evidence.empty() && assume_irreducible) {
        cert.irreducibility_evidence = "asserted by the caller (unverified)";
        cert.caveats.push_back("irreducibility was assumed, not checked");
    }
    if (!cert.irreducibility_evidence.empty() && !rs.capped) {
        cert.verdict = AntiderivativeVerdict::transcendental;
    }
    return cert;
}

std::string to_string(RiccatiVerdict v) {
    switch (v) {
        case RiccatiVerdict::nonexistence_certified: return "nonexistence-certified";
        case RiccatiVerdict::found: return "found";
        case RiccatiVerdict::none_in_bounds: return "none-in-bounds";
    }
    return "?";
}

std::string to_string(AntiderivativeVerdict v) {
    switch (v) {
        case AntiderivativeVerdict::transcendental: return "antiderivative-transcendental";
        case AntiderivativeVerdict::algebraic: return "antiderivative-algebraic";
        case AntiderivativeVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace diffcert
