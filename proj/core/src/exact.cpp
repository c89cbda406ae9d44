#include "diffcert/exact.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace diffcert {

// ---------------------------------------------------------------- BigRat

BigRat::BigRat(const BigInt& num, const BigInt& den) : value_(num, den) {
    if (den == 0) throw Error("rational with zero denominator");
    value_.canonicalize();
}

BigRat::BigRat(const mpq_class& q) : value_(q) {
    if (value_.get_den() == 0) throw Error("rational with zero denominator");
    value_.canonicalize();
}

BigRat BigRat::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    BigInt n, d(1);
    try {
        if (slash == std::string::npos) {
            n = BigInt(s, 10);
        } else {
            n = BigInt(s.substr(0, slash), 10);
            d = BigInt(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal '" + s + "'");
    }
    return BigRat(n, d);
}

BigRat BigRat::abs() const { return sign() < 0 ? -*this : *this; }

BigRat BigRat::inverse() const {
    if (is_zero()) throw Error("division by zero");
    BigRat r;
    r.value_ = 1 / value_;
    return r;
}

BigRat BigRat::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return BigRat(n, d);
}

BigRat BigRat::operator-() const {
    BigRat r;
    r.value_ = -value_;
    return r;
}

BigRat& BigRat::operator+=(const BigRat& rhs) {
    value_ += rhs.value_;
    return *this;
}

BigRat& BigRat::operator-=(const BigRat& rhs) {
    value_ -= rhs.value_;
    return *this;
}

BigRat& BigRat::operator*=(const BigRat& rhs) {
    value_ *= rhs.value_;
    return *this;
}

BigRat& BigRat::operator/=(const BigRat& rhs) {
    if (rhs.is_zero()) throw Error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::string BigRat::str() const { return value_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const BigRat& q) { return os << q.str(); }

// --------------------------------------------------------------- UniPoly

namespace {

const BigRat& zero_rat() {
    static const BigRat zero;
    return zero;
}

// Renders |c| * mono with the sign handled by the caller.
void append_term(std::string& out, const BigRat& c, const std::string& mono, bool first) {
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
        out += a.str();
        out += "*";
        out += mono;
    }
}

}  // namespace

UniPoly::UniPoly(const BigRat& constant) {
    if (!constant.is_zero()) coeffs_.push_back(constant);
}

UniPoly::UniPoly(std::vector<BigRat> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly UniPoly::monomial(const BigRat& c, int power) {
    if (power < 0) throw Error("negative monomial power");
    if (c.is_zero()) return {};
    std::vector<BigRat> v(static_cast<std::size_t>(power) + 1);
    v.back() = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int UniPoly::degree() const {
    return coeffs_.empty() ? minus_infinity : static_cast<int>(coeffs_.size()) - 1;
}

const BigRat& UniPoly::coeff(int power) const {
    if (power < 0 || power >= static_cast<int>(coeffs_.size())) return zero_rat();
    return coeffs_[static_cast<std::size_t>(power)];
}

const BigRat& UniPoly::leading() const {
    if (coeffs_.empty()) throw Error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

BigRat UniPoly::operator()(const BigRat& x) const {
    BigRat acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

UniPoly UniPoly::derivative(int times) const {
    UniPoly r = *this;
    for (int t = 0; t < times; ++t) {
        if (r.coeffs_.size() <= 1) return {};
        std::vector<BigRat> v(r.coeffs_.size() - 1);
        for (std::size_t i = 1; i < r.coeffs_.size(); ++i) v[i - 1] = r.coeffs_[i] * BigRat(i);
        r = UniPoly(std::move(v));
    }
    return r;
}

UniPoly UniPoly::antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<BigRat> v(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i] / BigRat(i + 1);
    return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    return *this * leading().inverse();
}

UniPoly UniPoly::taylor_shift(const BigRat& shift) const {
    // Horner in the shifted variable.
    UniPoly acc;
    UniPoly lin(std::vector<BigRat>{shift, BigRat(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * lin;
        acc += UniPoly(*it);
    }
    return acc;
}

int UniPoly::valuation_at(const BigRat& point) const {
    if (is_zero()) throw Error("valuation of zero polynomial");
    UniPoly shifted = taylor_shift(point);
    int v = 0;
    while (shifted.coeff(v).is_zero()) ++v;
    return v;
}

UniPoly UniPoly::pow(unsigned exponent) const {
    UniPoly result(BigRat(1));
    UniPoly base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return UniPoly(std::move(v));
}

UniPoly& UniPoly::operator*=(const UniPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

UniPoly& UniPoly::operator*=(const BigRat& s) {
    if (s.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

std::string UniPoly::str(std::string_view var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const BigRat& c = coeff(k);
        if (c.is_zero()) continue;
        std::string mono;
        if (k >= 1) mono = std::string(var);
        if (k >= 2) mono += "^" + std::to_string(k);
        append_term(out, c, mono, first);
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.str(); }

bool poly_less(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        if (a.coeff(k) != b.coeff(k)) return a.coeff(k) < b.coeff(k);
    }
    return false;
}

DivMod poly_divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(), a};
    const int db = b.degree();
    std::vector<BigRat> rem = a.coefficients();
    std::vector<BigRat> quot(static_cast<std::size_t>(a.degree() - db) + 1);
    const BigRat inv_lead = b.leading().inverse();
    for (int k = a.degree(); k >= db; --k) {
        const BigRat& top = rem[static_cast<std::size_t>(k)];
        if (top.is_zero()) continue;
        BigRat factor = top * inv_lead;
        quot[static_cast<std::size_t>(k - db)] = factor;
        for (int j = 0; j <= db; ++j) {
            const BigRat& bj = b.coeff(j);
            if (!bj.is_zero()) rem[static_cast<std::size_t>(k - db + j)] -= factor * bj;
        }
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = poly_divmod(x, y).remainder;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

// -------------------------------------------------------- rational roots

namespace {

// Prime factorization for divisor enumeration: trial division, then Brent's
// variant of Pollard rho on what remains.
BigInt pollard_brent(const BigInt& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    BigInt d = x - y;
                    q = (q * abs(d)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                BigInt d = x - ys;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
                g = abs(g);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(BigInt n, std::map<BigInt, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (unsigned long p = 2; p < 1000; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) {
            out[BigInt(p)]++;
            n /= p;
        }
    }
    std::vector<BigInt> stack{n};
    while (!stack.empty()) {
        BigInt m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 30) > 0) {
            out[m]++;
            continue;
        }
        BigInt d = pollard_brent(m);
        stack.push_back(d);
        stack.push_back(BigInt(m / d));
    }
}

std::vector<BigInt> divisors(const BigInt& n) {
    std::map<BigInt, int> primes;
    factor_into(n, primes);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : primes) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(BigInt(divs[i] * pk));
        }
    }
    return divs;
}

// Integer coefficients with content 1.
std::vector<BigInt> primitive_integer_form(const UniPoly& p) {
    BigInt l = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    std::vector<BigInt> ints;
    BigInt g = 0;
    for (const auto& c : p.coefficients()) {
        ints.push_back(BigInt(c.num() * (l / c.den())));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    for (auto& v : ints) v /= g;
    return ints;
}

bool is_root(const std::vector<BigInt>& f, const BigInt& p, const BigInt& q) {
    // Homogenized Horner: sum f_i p^i q^(d-i) == 0.
    BigInt acc = 0, qpow = 1;
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = acc * p + f[i] * qpow;
        qpow *= q;
    }
    return acc == 0;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error("rational_roots of zero polynomial");
    std::vector<RationalRoot> roots;
    UniPoly rest = p;
    int zero_mult = 0;
    while (rest.coeff(0).is_zero()) {
        rest = poly_divmod(rest, UniPoly::z()).quotient;
        ++zero_mult;
    }
    if (zero_mult) roots.push_back({BigRat(0), zero_mult});
    if (rest.degree() <= 0) return roots;

    UniPoly squarefree = poly_divmod(rest, poly_gcd(rest, rest.derivative())).quotient;
    std::vector<BigInt> f = primitive_integer_form(squarefree);
    std::vector<BigInt> num_divs = divisors(f.front());
    std::vector<BigInt> den_divs = divisors(f.back());
    std::set<BigRat> candidates;
    for (const auto& a : num_divs) {
        for (const auto& b : den_divs) {
            candidates.insert(BigRat(a, b));
            candidates.insert(BigRat(BigInt(-a), b));
        }
    }
    for (const auto& c : candidates) {
        if (!is_root(f, c.num(), c.den())) continue;
        UniPoly lin(std::vector<BigRat>{-c, BigRat(1)});
        int mult = 0;
        for (;;) {
            DivMod dm = poly_divmod(rest, lin);
            if (!dm.remainder.is_zero()) break;
            rest = dm.quotient;
            ++mult;
        }
        roots.push_back({c, mult});
    }
    std::sort(roots.begin(), roots.end(),
              [](const RationalRoot& a, const RationalRoot& b) { return a.value < b.value; });
    return roots;
}

bool splits_over_q(const UniPoly& p) {
    if (p.is_zero()) return false;
    int total = 0;
    for (const auto& r : rational_roots(p)) total += r.multiplicity;
    return total == p.degree();
}

bool rational_sqrt(const BigRat& q, BigRat& root) {
    if (q.sign() < 0) return false;
    BigInt n = q.num(), d = q.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    BigInt rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = BigRat(rn, rd);
    return true;
}

// --------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw Error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = UniPoly(BigRat(1));
        return;
    }
    UniPoly g = poly_gcd(num, den);
    UniPoly n = poly_divmod(num, g).quotient;
    UniPoly d = poly_divmod(den, g).quotient;
    BigRat lead = d.leading();
    num_ = n * lead.inverse();
    den_ = d * lead.inverse();
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str(std::string_view var) const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

// ---------------------------------------------------------- combinatorics

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigRat falling_factorial(const BigRat& x, int k) {
    BigRat r(1);
    for (int i = 0; i < k; ++i) r *= x - BigRat(i);
    return r;
}

UniPoly falling_factorial_poly(int k) {
    UniPoly r(BigRat(1));
    for (int i = 0; i < k; ++i) r = r * UniPoly(std::vector<BigRat>{BigRat(-i), BigRat(1)});
    return r;
}

}  // namespace diffcert
