#pragma once

// Linear differential operators L = sum_i a_i(z) D^i with polynomial
// coefficients: formal adjoints, bilinear concomitants, polynomial and rational
// solutions, rational Riccati solutions for order 2, and the decision whether
// an antiderivative of a solution is algebraic over the solution field.

#include "diffcert/exact.hpp"
#include "diffcert/mpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffcert {

class DiffOperator {
public:
    /// a_0..a_n; trailing zero coefficients are dropped. Throws if all are zero.
    explicit DiffOperator(std::vector<UniPoly> coefficients);

    /// D^k
    static DiffOperator derivative_power(int k);
    static DiffOperator multiplication(const UniPoly& a);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const UniPoly& coefficient(int i) const;
    const std::vector<UniPoly>& coefficients() const { return coeffs_; }
    const UniPoly& leading() const { return coeffs_.back(); }

    UniPoly apply(const UniPoly& u) const;
    RatFunc apply(const RatFunc& u) const;

    /// (*this) o rhs
    DiffOperator compose(const DiffOperator& rhs) const;

    friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
    friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
    friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) { return a.compose(b); }
    friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

    /// "D^2 - z", "(z^2 + 1)*D^2 + D"
    std::string str() const;

private:
    std::vector<UniPoly> coeffs_;
};

/// L*(v) = sum_i (-1)^i (a_i v)^(i)
DiffOperator adjoint(const DiffOperator& l);

/// pi(u, v) = sum c_ij u^(i) v^(j), 0 <= i, j <= n-1.
struct BilinearConcomitant {
    int order = 0;  // n, the order of L
    std::vector<std::vector<UniPoly>> table;

    const UniPoly& at(int i, int j) const;
    /// "u'*v - u*v'"
    std::string str() const;
};

BilinearConcomitant concomitant(const DiffOperator& l);

/// Differential polynomial ring in u, u', ..., u^(n), v, ..., v^(n) encoded as
/// MultiPoly variables y1..y_{2n+2} (z stays variable 0).
struct LagrangeCheck {
    bool holds = false;
    MultiPoly residual;  // v L(u) - u L*(v) - d/dz pi(u, v)
    std::vector<std::string> variable_names;
};

LagrangeCheck verify_lagrange(const DiffOperator& l);

struct PolySolutionSpace {
    bool consistent = false;
    UniPoly particular;
    std::vector<UniPoly> homogeneous;
    int degree_bound = 0;  // UniPoly::minus_infinity when no candidate degree exists
    bool capped = false;   // the bound was lowered to the cap, so the space may be incomplete
};

/// Polynomial solutions of L(g) = rhs. The degree bound comes from the
/// leading behaviour of L on z^m; `degree_cap` < 0 uses the global cap.
PolySolutionSpace polynomial_solutions(const DiffOperator& l, const UniPoly& rhs, int degree_cap = -1);

struct SingularPoint {
    BigRat point;
    int multiplicity = 0;  // as a root of the leading coefficient
    UniPoly indicial;      // local indicial polynomial at the point
    int pole_bound = 0;
};

struct RatSolutionSpace {
    bool consistent = false;
    RatFunc particular;
    std::vector<RatFunc> homogeneous;
    UniPoly denominator;  // universal denominator used
    std::vector<SingularPoint> singular_points;
    bool capped = false;
};

/// Rational solutions of L(u) = rhs. Requires the leading coefficient to split over Q.
RatSolutionSpace rational_solutions(const DiffOperator& l, const UniPoly& rhs);

enum class RiccatiVerdict { nonexistence_certified, found, none_in_bounds };

struct RiccatiResult {
    RiccatiVerdict verdict = RiccatiVerdict::none_in_bounds;
    std::vector<RatFunc> solutions;  // w with w' + w^2 + a1 w + a0 = 0 (L made monic)
    int search_bound = 0;
    std::string certificate;
};

/// Order-2 operators with constant leading coefficient.
RiccatiResult riccati_rational_nonexistence(const DiffOperator& l, int search_bound);

enum class AntiderivativeVerdict { transcendental, algebraic, inconclusive };

struct AntiderivativeWitness {
    RatFunc v;  // L*(v) = 1
    /// r_i with U = c - sum_i r_i u^(i), i.e. r_i = sum_j c_ij v^(j).
    std::vector<RatFunc> relation_coefficients;
    std::string relation;  // "U = c - (...)"
    /// d/dz(c - pi(u, v)) reduces to u modulo L(u) = 0.
    bool symbolic_check = false;
};

struct TranscendenceCertificate {
    DiffOperator op;
    DiffOperator adjoint_op;
    AntiderivativeVerdict verdict = AntiderivativeVerdict::inconclusive;
    std::optional<AntiderivativeWitness> witness;
    std::string irreducibility_evidence;
    std::vector<std::string> caveats;
};

TranscendenceCertificate antiderivative_algebraicity(const DiffOperator& l, int search_bound,
                                                     bool assume_irreducible = false);

/// "u", "u'", "u''", "u'''", "u^(4)", ...
std::string derivative_name(const std::string& base, int k);

std::string to_string(RiccatiVerdict v);
std::string to_string(AntiderivativeVerdict v);

}  // namespace diffcert
