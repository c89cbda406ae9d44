#include "diffcert/truncseries.hpp"

#include <algorithm>
#include <map>

namespace diffcert {

TruncSeries::TruncSeries(std::vector<BigRat> coefficients, int order)
    : coeffs_(std::move(coefficients)), order_(order) {
    if (order < 0) throw Error("series order must be nonnegative");
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

TruncSeries TruncSeries::constant(const BigRat& c, int order) {
    return TruncSeries(std::vector<BigRat>{c}, order);
}

TruncSeries TruncSeries::identity(int order) {
    return TruncSeries(std::vector<BigRat>{BigRat(0), BigRat(1)}, order);
}

TruncSeries TruncSeries::from_poly(const UniPoly& p, int order) {
    return TruncSeries(p.coefficients(), order);
}

const BigRat& TruncSeries::coeff(int k) const {
    if (k < 0 || k > order_) throw Error("series coefficient " + std::to_string(k) + " beyond order");
    return coeffs_[static_cast<std::size_t>(k)];
}

TruncSeries TruncSeries::truncated(int order) const {
    if (order > order_) throw Error("cannot extend a truncated series");
    return TruncSeries(coeffs_, order);
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    int n = std::min(a.order_, b.order_);
    std::vector<BigRat> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[k] = a.coeffs_[k] + b.coeffs_[k];
    return TruncSeries(std::move(v), n);
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return multiply(a, b); }

TruncSeries operator*(const BigRat& s, const TruncSeries& a) {
    TruncSeries r = a;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

std::string TruncSeries::str() const {
    std::string out;
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
        const BigRat& c = coeffs_[k];
        if (c.is_zero()) continue;
        bool negative = c.sign() < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        BigRat a = c.abs();
        std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        if (mono.empty()) {
            out += a.str();
        } else if (a.is_one()) {
            out += mono;
        } else {
            out += a.str() + "*" + mono;
        }
        first = false;
    }
    if (first) out = "0";
    out += " + O(z^" + std::to_string(order_ + 1) + ")";
    return out;
}

TruncSeries derivative(const TruncSeries& s) {
    if (s.order() < 1) throw Error("derivative needs a series of order >= 1");
    std::vector<BigRat> v(static_cast<std::size_t>(s.order()));
    for (int k = 1; k <= s.order(); ++k) v[k - 1] = s.coeff(k) * BigRat(k);
    return TruncSeries(std::move(v), s.order() - 1);
}

TruncSeries antiderivative(const TruncSeries& s, const BigRat& c0) {
    std::vector<BigRat> v(static_cast<std::size_t>(s.order()) + 2);
    v[0] = c0;
    for (int k = 0; k <= s.order(); ++k) v[k + 1] = s.coeff(k) / BigRat(k + 1);
    return TruncSeries(std::move(v), s.order() + 1);
}

TruncSeries multiply(const TruncSeries& a, const TruncSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<BigRat> v(static_cast<std::size_t>(n) + 1);
    // Sparse operands (Airy series) make the zero skip worthwhile.
    std::vector<int> nza, nzb;
    for (int k = 0; k <= n; ++k) {
        if (!a.coeff(k).is_zero()) nza.push_back(k);
        if (!b.coeff(k).is_zero()) nzb.push_back(k);
    }
    for (int i : nza) {
        for (int j : nzb) {
            if (i + j > n) break;
            v[i + j] += a.coeff(i) * b.coeff(j);
        }
    }
    return TruncSeries(std::move(v), n);
}

TruncSeries power(const TruncSeries& s, unsigned k) {
    TruncSeries result = TruncSeries::constant(BigRat(1), s.order());
    TruncSeries base = s;
    while (k) {
        if (k & 1u) result = multiply(result, base);
        k >>= 1u;
        if (k) base = multiply(base, base);
    }
    return result;
}

TruncSeries series_of(const RatFunc& f, int order) {
    const UniPoly& den = f.den();
    if (den.coeff(0).is_zero()) throw Error("rational function has a pole at 0");
    // num = den * s, solved coefficientwise.
    std::vector<BigRat> s(static_cast<std::size_t>(order) + 1);
    const BigRat inv = den.coeff(0).inverse();
    for (int k = 0; k <= order; ++k) {
        BigRat acc = f.num().coeff(k);
        for (int j = 1; j <= std::min(k, den.degree()); ++j) acc -= den.coeff(j) * s[k - j];
        s[k] = acc * inv;
    }
    return TruncSeries(std::move(s), order);
}

TruncSeries substitute(const MultiPoly& p, std::span<const TruncSeries> args, int order) {
    if (args.size() != p.nvars()) {
        throw Error("substitution needs " + std::to_string(p.nvars()) + " series, got " +
                    std::to_string(args.size()));
    }
    int n = order;
    for (const auto& a : args) n = std::min(n, a.order());
    std::vector<std::vector<TruncSeries>> powers(p.nvars() + 1);
    auto power_of = [&](std::size_t var, std::uint32_t k) -> const TruncSeries& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(TruncSeries::constant(BigRat(1), n));
        const TruncSeries base = var == 0 ? TruncSeries::identity(n) : args[var - 1].truncated(n);
        while (cache.size() <= k) cache.push_back(multiply(cache.back(), base));
        return cache[k];
    };
    TruncSeries acc = TruncSeries::constant(BigRat(0), n);
    for (const auto& [e, c] : p.terms()) {
        TruncSeries term = TruncSeries::constant(c, n);
        for (std::size_t var = 0; var < e.size(); ++var) {
            if (e[var] == 0) continue;
            term = multiply(term, power_of(var, e[var]));
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace diffcert
