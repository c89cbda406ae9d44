#pragma once

#include "diffcert/exact.hpp"
#include "diffcert/mpoly.hpp"

#include <span>
#include <string>
#include <vector>

namespace diffcert {

/// Power series at z = 0 known exactly through z^order.
/// Binary operations return the smaller of the operand orders.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(std::vector<BigRat> coefficients, int order);

    static TruncSeries constant(const BigRat& c, int order);
    static TruncSeries identity(int order);
    static TruncSeries from_poly(const UniPoly& p, int order);

    int order() const { return order_; }
    const BigRat& coeff(int k) const;
    const std::vector<BigRat>& coefficients() const { return coeffs_; }

    TruncSeries truncated(int order) const;

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const BigRat& s, const TruncSeries& a);
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) = default;

    /// "1 + 1/6*z^3 + O(z^7)"
    std::string str() const;

private:
    std::vector<BigRat> coeffs_;  // size order_ + 1
    int order_ = 0;
};

TruncSeries derivative(const TruncSeries& s);
TruncSeries antiderivative(const TruncSeries& s, const BigRat& c0);
TruncSeries multiply(const TruncSeries& a, const TruncSeries& b);
TruncSeries power(const TruncSeries& s, unsigned k);
/// Expansion of a rational function at 0; requires den(0) != 0.
TruncSeries series_of(const RatFunc& f, int order);

/// p(z, args...) with z replaced by the identity series. Result order is the
/// minimum of `order` and the argument orders.
TruncSeries substitute(const MultiPoly& p, std::span<const TruncSeries> args, int order);

}  // namespace diffcert
