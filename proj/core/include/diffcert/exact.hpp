#pragma once

// Exact rational arithmetic, dense univariate polynomials over Q and
// rational functions in z. Everything else in the library is built on these.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diffcert {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using BigInt = mpz_class;

/// Canonical rational number: gcd(num, den) = 1, den > 0, zero is 0/1.
class BigRat {
public:
    BigRat() = default;

    template <std::signed_integral T>
    BigRat(T v) : value_(static_cast<long>(v)) {}

    template <std::unsigned_integral T>
    BigRat(T v) : value_(static_cast<unsigned long>(v)) {}

    BigRat(const BigInt& n) : value_(n) {}
    BigRat(const BigInt& num, const BigInt& den);
    explicit BigRat(const mpq_class& q);

    /// Accepts "n" or "n/d" with an optional leading sign.
    static BigRat parse(std::string_view text);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    const mpq_class& mpq() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    BigRat abs() const;
    BigRat inverse() const;
    BigRat pow(long exponent) const;

    BigRat operator-() const;
    BigRat& operator+=(const BigRat& rhs);
    BigRat& operator-=(const BigRat& rhs);
    BigRat& operator*=(const BigRat& rhs);
    BigRat& operator/=(const BigRat& rhs);

    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const;

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const BigRat& q);

/// Dense polynomial in z with rational coefficients; no trailing zeros.
class UniPoly {
public:
    static constexpr int minus_infinity = std::numeric_limits<int>::min();

    UniPoly() = default;
    UniPoly(const BigRat& constant);
    template <std::integral T>
    UniPoly(T constant) : UniPoly(BigRat(constant)) {}
    explicit UniPoly(std::vector<BigRat> coefficients);

    static UniPoly monomial(const BigRat& c, int power);
    static UniPoly z() { return monomial(BigRat(1), 1); }

    /// Degree, or minus_infinity for the zero polynomial.
    int degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const BigRat& coeff(int power) const;
    const BigRat& leading() const;
    const std::vector<BigRat>& coefficients() const { return coeffs_; }

    BigRat operator()(const BigRat& x) const;
    UniPoly derivative(int times = 1) const;
    UniPoly antiderivative() const;
    UniPoly monic() const;
    /// p(z + shift)
    UniPoly taylor_shift(const BigRat& shift) const;
    /// Multiplicity of `point` as a root (0 when p(point) != 0). p must be nonzero.
    int valuation_at(const BigRat& point) const;
    UniPoly pow(unsigned exponent) const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& rhs);
    UniPoly& operator-=(const UniPoly& rhs);
    UniPoly& operator*=(const UniPoly& rhs);
    UniPoly& operator*=(const BigRat& s);

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(UniPoly a, const BigRat& s) { return a *= s; }
    friend UniPoly operator*(const BigRat& s, UniPoly a) { return a *= s; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Canonical text, e.g. "3/2*z^2 - z + 1".
    std::string str(std::string_view var = "z") const;

private:
    void trim();
    std::vector<BigRat> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const UniPoly& p);

/// Total order on polynomials (degree, then coefficients from the top); used for sorted reports.
bool poly_less(const UniPoly& a, const UniPoly& b);

struct DivMod {
    UniPoly quotient;
    UniPoly remainder;
};

DivMod poly_divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd; throws when both inputs are zero.
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

struct RationalRoot {
    BigRat value;
    int multiplicity;
    friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

/// Distinct rational roots in increasing order, with multiplicities.
std::vector<RationalRoot> rational_roots(const UniPoly& p);

/// Sum of root multiplicities equals the degree.
bool splits_over_q(const UniPoly& p);

/// Exact square root of a nonnegative rational, if it is a square.
bool rational_sqrt(const BigRat& q, BigRat& root);

/// Element of Q(z): den monic, gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : den_(BigRat(1)) {}
    RatFunc(const UniPoly& num) : num_(num), den_(BigRat(1)) {}
    RatFunc(const BigRat& c) : num_(c), den_(BigRat(1)) {}
    RatFunc(const UniPoly& num, const UniPoly& den);

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc derivative() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str(std::string_view var = "z") const;

private:
    UniPoly num_;
    UniPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
/// x (x - 1) ... (x - k + 1)
BigRat falling_factorial(const BigRat& x, int k);
/// t (t - 1) ... (t - k + 1) as a polynomial in t.
UniPoly falling_factorial_poly(int k);

}  // namespace diffcert
