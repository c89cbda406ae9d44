#pragma once

// Sparse multivariate polynomials in z, y1..yn over Q.
//
// Variable index 0 is z, index j (1 <= j <= n) is y_j. Terms are kept in a
// map ordered by graded lexicographic order on (e_z, e_1, ..., e_n), so every
// traversal and rendering is deterministic.

#include "diffcert/exact.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace diffcert {

using Exponents = std::vector<std::uint32_t>;

int total_degree(const Exponents& e);
/// Degree in y1..yn only.
int y_degree(const Exponents& e);

struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Global cap on total degree of any polynomial product (default 64).
int degree_cap();
void set_degree_cap(int cap);

class MultiPoly {
public:
    using TermMap = std::map<Exponents, BigRat, GrlexLess>;

    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const BigRat& c);
    static MultiPoly z(std::size_t nvars);
    /// y_j, 1-based.
    static MultiPoly y(std::size_t nvars, std::size_t j);
    static MultiPoly monomial(std::size_t nvars, Exponents e, const BigRat& c = BigRat(1));
    static MultiPoly from_univariate(std::size_t nvars, const UniPoly& p);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Exponents& e, const BigRat& c);
    BigRat coefficient(const Exponents& e) const;

    int total_degree() const;
    int y_degree() const;
    int degree_in(std::size_t var) const;
    bool is_y_free() const;
    bool is_constant() const;
    bool is_y_homogeneous() const;
    /// Throws unless the polynomial is y-free.
    UniPoly as_univariate() const;

    /// Largest term in graded lex order; throws on zero.
    const std::pair<const Exponents, BigRat>& leading_term() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    MultiPoly& operator*=(const BigRat& s);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const BigRat& s) { return a *= s; }
    friend MultiPoly operator*(const BigRat& s, MultiPoly a) { return a *= s; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(unsigned exponent) const;

    /// Same polynomial viewed with more y-variables.
    MultiPoly extended(std::size_t nvars) const;

    /// Canonical text, terms in decreasing graded lex order: "-z*y1^2 + y2^2 + y3".
    /// `names` overrides variable names (index 0 is z).
    std::string str(std::span<const std::string> names = {}) const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

enum class ArithKind { add, sub, mul };

MultiPoly mp_arith(const MultiPoly& a, const MultiPoly& b, ArithKind kind);

/// Formal partial derivative; var 0 is z, var j is y_j.
MultiPoly partial_derivative(const MultiPoly& p, std::size_t var);

/// q with a = q * b, or nullopt when b does not divide a. Throws when b = 0.
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);

/// Components by total y-degree, increasing; zero components omitted.
std::vector<std::pair<int, MultiPoly>> y_homogeneous_components(const MultiPoly& p);

/// q_0..q_m with p = sum_k q_k * y_j^k and each q_k free of y_j (j is 1-based).
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t j);

/// Scaled to integer coefficients with content 1 and positive leading coefficient.
MultiPoly primitive_normalized(const MultiPoly& p);

/// All exponent vectors with e_z <= max_z and y-degree <= max_y (or == exact_y when >= 0),
/// in increasing graded lex order.
std::vector<Exponents> bounded_monomials(std::size_t nvars, int max_z, int max_y, int exact_y = -1);

}  // namespace diffcert
