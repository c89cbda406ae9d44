#include "diffcert/mpoly.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <ostream>

namespace diffcert {

namespace {

std::atomic<int> g_degree_cap{64};

void check_nvars(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) {
        throw Error("nvars mismatch: " + std::to_string(a.nvars()) + " vs " +
                    std::to_string(b.nvars()));
    }
}

std::string var_name(std::size_t i, std::span<const std::string> names) {
    if (i < names.size()) return names[i];
    return i == 0 ? std::string("z") : "y" + std::to_string(i);
}

}  // namespace

int total_degree(const Exponents& e) {
    return static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
}

int y_degree(const Exponents& e) {
    if (e.empty()) return 0;
    return static_cast<int>(std::accumulate(e.begin() + 1, e.end(), std::uint64_t{0}));
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

int degree_cap() { return g_degree_cap.load(); }

void set_degree_cap(int cap) {
    if (cap < 1) throw Error("degree cap must be positive");
    g_degree_cap.store(cap);
}

MultiPoly MultiPoly::constant(std::size_t nvars, const BigRat& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars + 1, 0), c);
    return p;
}

MultiPoly MultiPoly::z(std::size_t nvars) {
    Exponents e(nvars + 1, 0);
    e[0] = 1;
    return monomial(nvars, std::move(e));
}

MultiPoly MultiPoly::y(std::size_t nvars, std::size_t j) {
    if (j < 1 || j > nvars) throw Error("variable y" + std::to_string(j) + " out of range");
    Exponents e(nvars + 1, 0);
    e[j] = 1;
    return monomial(nvars, std::move(e));
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponents e, const BigRat& c) {
    if (e.size() != nvars + 1) throw Error("exponent vector length mismatch");
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::from_univariate(std::size_t nvars, const UniPoly& u) {
    MultiPoly p(nvars);
    Exponents e(nvars + 1, 0);
    for (int k = 0; k <= u.degree(); ++k) {
        e[0] = static_cast<std::uint32_t>(k);
        p.add_term(e, u.coeff(k));
    }
    return p;
}

void MultiPoly::add_term(const Exponents& e, const BigRat& c) {
    if (c.is_zero()) return;
    if (e.size() != nvars_ + 1) throw Error("exponent vector length mismatch");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BigRat MultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRat() : it->second;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return UniPoly::minus_infinity;
    return diffcert::total_degree(terms_.rbegin()->first);
}

int MultiPoly::y_degree() const {
    if (terms_.empty()) return UniPoly::minus_infinity;
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, diffcert::y_degree(e));
    return d;
}

int MultiPoly::degree_in(std::size_t var) const {
    if (var > nvars_) throw Error("variable index out of range");
    if (terms_.empty()) return UniPoly::minus_infinity;
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
}

bool MultiPoly::is_y_free() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return diffcert::y_degree(t.first) == 0; });
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && diffcert::total_degree(terms_.begin()->first) == 0);
}

bool MultiPoly::is_y_homogeneous() const {
    if (terms_.empty()) return true;
    int d = diffcert::y_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return diffcert::y_degree(t.first) == d; });
}

UniPoly MultiPoly::as_univariate() const {
    if (!is_y_free()) throw Error("polynomial depends on y-variables");
    std::vector<BigRat> v;
    for (const auto& [e, c] : terms_) {
        if (v.size() <= e[0]) v.resize(e[0] + 1);
        v[e[0]] = c;
    }
    return UniPoly(std::move(v));
}

const std::pair<const Exponents, BigRat>& MultiPoly::leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    check_nvars(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    check_nvars(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const BigRat& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_nvars(a, b);
    MultiPoly r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.total_degree() + b.total_degree() > degree_cap()) {
        throw Error("product degree " + std::to_string(a.total_degree() + b.total_degree()) +
                    " exceeds degree cap " + std::to_string(degree_cap()));
    }
    Exponents e(a.nvars_ + 1);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
    MultiPoly result = constant(nvars_, BigRat(1));
    MultiPoly base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::extended(std::size_t nvars) const {
    if (nvars < nvars_) throw Error("cannot shrink variable count");
    MultiPoly r(nvars);
    for (const auto& [e, c] : terms_) {
        Exponents f(e);
        f.resize(nvars + 1, 0);
        r.add_term(f, c);
    }
    return r;
}

std::string MultiPoly::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(i, names);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        bool negative = c.sign() < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        BigRat a = c.abs();
        if (mono.empty()) {
            out += a.str();
        } else if (a.is_one()) {
            out += mono;
        } else {
            out += a.str() + "*" + mono;
        }
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

MultiPoly mp_arith(const MultiPoly& a, const MultiPoly& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
    }
    throw Error("unknown arithmetic kind");
}

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
    if (var > p.nvars()) throw Error("variable index " + std::to_string(var) + " out of range");
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponents f = e;
        f[var] -= 1;
        r.add_term(f, c * BigRat(e[var]));
    }
    return r;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
    check_nvars(a, b);
    if (b.is_zero()) throw Error("exact division by zero polynomial");
    const auto& [lb, cb] = b.leading_term();
    const BigRat inv = cb.inverse();
    MultiPoly quotient(a.nvars());
    MultiPoly rem = a;
    // If b | a then LT(rem) = LT(q') LT(b) at every step of the reduction.
    while (!rem.is_zero()) {
        const auto [lr, cr] = rem.leading_term();
        Exponents shift(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            shift[i] = lr[i] - lb[i];
        }
        MultiPoly t = MultiPoly::monomial(a.nvars(), shift, cr * inv);
        quotient += t;
        rem -= t * b;
    }
    return quotient;
}

std::vector<std::pair<int, MultiPoly>> y_homogeneous_components(const MultiPoly& p) {
    std::map<int, MultiPoly> by_degree;
    for (const auto& [e, c] : p.terms()) {
        auto [it, inserted] = by_degree.try_emplace(y_degree(e), p.nvars());
        it->second.add_term(e, c);
    }
    std::vector<std::pair<int, MultiPoly>> out;
    for (auto& [d, q] : by_degree) out.emplace_back(d, std::move(q));
    return out;
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t j) {
    if (j < 1 || j > p.nvars()) throw Error("variable y" + std::to_string(j) + " out of range");
    std::vector<MultiPoly> out;
    for (const auto& [e, c] : p.terms()) {
        std::size_t k = e[j];
        while (out.size() <= k) out.emplace_back(p.nvars());
        Exponents f = e;
        f[j] = 0;
        out[k].add_term(f, c);
    }
    return out;
}

MultiPoly primitive_normalized(const MultiPoly& p) {
    if (p.is_zero()) return p;
    BigInt l = 1, g = 0;
    for (const auto& [e, c] : p.terms()) {
        BigInt d = c.den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (const auto& [e, c] : p.terms()) {
        BigInt n = c.num() * (l / c.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    BigRat scale(l, g);
    if (p.leading_term().second.sign() < 0) scale = -scale;
    return p * scale;
}

std::vector<Exponents> bounded_monomials(std::size_t nvars, int max_z, int max_y, int exact_y) {
    std::vector<Exponents> out;
    Exponents e(nvars + 1, 0);
    const int lo = exact_y >= 0 ? exact_y : 0;
    const int hi = exact_y >= 0 ? exact_y : max_y;
    // Enumerate y-parts of each degree, then attach z powers.
    auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var == nvars) {
            if (remaining != 0) return;
            for (int a = 0; a <= max_z; ++a) {
                e[0] = static_cast<std::uint32_t>(a);
                out.push_back(e);
            }
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[var + 1] = static_cast<std::uint32_t>(k);
            self(self, var + 1, remaining - k);
        }
        e[var + 1] = 0;
    };
    for (int d = lo; d <= hi; ++d) {
        if (nvars == 0) {
            if (d != 0) continue;
            for (int a = 0; a <= max_z; ++a) {
                e[0] = static_cast<std::uint32_t>(a);
                out.push_back(e);
            }
            continue;
        }
        rec(rec, 0, d);
    }
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

}  // namespace diffcert
