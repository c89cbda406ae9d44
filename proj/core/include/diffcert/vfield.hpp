#pragma once

// Polynomial vector fields y_j' = f_j(z, y) and the derivation
//   D = d/dz + sum_j f_j d/dy_j
// they induce on Q[z, y1..yn], with bounded-degree searches for Darboux
// polynomials (Dp = w p), first integrals (Dp = 0) and the affine problem
// Dp + c F = 0.

#include "diffcert/exact.hpp"
#include "diffcert/mpoly.hpp"
#include "diffcert/truncseries.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace diffcert {

class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(std::vector<MultiPoly> components);

    std::size_t nvars() const { return components_.size(); }
    const std::vector<MultiPoly>& components() const { return components_; }
    /// f_j, 1-based.
    const MultiPoly& component(std::size_t j) const;

    /// Every term of every f_j has y-degree exactly 1, i.e. f = A(z) y.
    bool is_linear() const { return linear_; }
    /// Largest z-degree in any component.
    int max_z_degree() const;

    /// "y1' = y2; y2' = z*y1"
    std::string str() const;

    friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

private:
    std::vector<MultiPoly> components_;
    bool linear_ = true;
};

class Derivation {
public:
    explicit Derivation(PolyVectorField field) : field_(std::move(field)) {}

    const PolyVectorField& field() const { return field_; }
    std::size_t nvars() const { return field_.nvars(); }

    MultiPoly apply(const MultiPoly& p) const;
    MultiPoly operator()(const MultiPoly& p) const { return apply(p); }

private:
    PolyVectorField field_;
};

Derivation make_derivation(PolyVectorField field);
MultiPoly apply_derivation(const Derivation& d, const MultiPoly& p);

/// w in Q[z] with Dp = w p, or nullopt. Throws when p = 0.
std::optional<UniPoly> cofactor_of(const Derivation& d, const MultiPoly& p);

struct SearchBounds {
    int z_degree = 0;  // max exponent of z
    int y_degree = 0;  // max total degree in y1..yn
    friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

enum class DarbouxVerdict { found, none_in_bounds };

struct DarbouxCertificate {
    MultiPoly p;
    UniPoly cofactor;
    SearchBounds bounds;
    DarbouxVerdict verdict = DarbouxVerdict::none_in_bounds;
    /// Dp == cofactor * p re-checked through exact_divide.
    bool reverified = false;
};

/// Darboux polynomials sharing one cofactor. Basis elements are primitive-normalized.
struct DarbouxFamily {
    UniPoly cofactor;
    std::vector<MultiPoly> basis;
};

struct DarbouxSearch {
    SearchBounds bounds;
    int cofactor_degree = 0;          // as requested
    int effective_cofactor_degree = 0;  // after the top-degree reduction
    std::vector<DarbouxFamily> families;  // sorted by cofactor

    /// The only Darboux polynomials in bounds are the nonzero constants (with w = 0).
    bool only_constants() const;
    std::vector<DarbouxCertificate> certificates() const;
};

/// Kernel of D on the bounded space, modulo constants.
struct FirstIntegralSearch {
    SearchBounds bounds;
    std::vector<MultiPoly> basis;
};

/// Solutions (p, c) of Dp + c * forcing = 0 with p in the bounded space.
struct AffineDarbouxSolution {
    SearchBounds bounds;
    MultiPoly forcing;
    std::vector<std::pair<MultiPoly, BigRat>> basis;

    bool c_forced_zero() const;
    /// Solution space is exactly {(constant, 0)}.
    bool only_constant_p() const;
};

using DarbouxSolution = std::variant<AffineDarbouxSolution, FirstIntegralSearch, DarbouxSearch>;

/// Dispatch: forcing != 0 gives the affine solve, forcing = 0 with cofactor_degree 0
/// the first-integral search, cofactor_degree >= 1 the bilinear Darboux search.
DarbouxSolution solve_affine_darboux(const Derivation& d, const MultiPoly& forcing,
                                     SearchBounds bounds, int cofactor_degree);

AffineDarbouxSolution affine_darboux(const Derivation& d, const MultiPoly& forcing, SearchBounds bounds);
FirstIntegralSearch first_integrals(const Derivation& d, SearchBounds bounds);
/// Linear fields only. cofactor_degree < 0 selects the default (max z-degree of the field).
DarbouxSearch darboux_search(const Derivation& d, SearchBounds bounds, int cofactor_degree = -1);

struct TotalDerivativeCheck {
    bool verified = false;
    int checked_through = 0;
    TruncSeries lhs;  // d/dz q(z, sols)
    TruncSeries rhs;  // (Dq)(z, sols)
};

/// Checks d/dz q(z, w(z)) = (Dq)(z, w(z)) through order N - 1. Throws if the
/// series do not solve the field's system through that order.
TotalDerivativeCheck verify_total_derivative(const Derivation& d, const MultiPoly& q,
                                             const std::vector<TruncSeries>& sols, int order);

}  // namespace diffcert
