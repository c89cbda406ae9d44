#pragma once

// Series solutions at the ordinary point 0, the Airy fundamental system,
// identity checks by substitution and the coefficient-growth analysis.

#include "diffcert/exact.hpp"
#include "diffcert/linode.hpp"
#include "diffcert/mpoly.hpp"
#include "diffcert/truncseries.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace diffcert {

/// initial[i] = u^(i)(0). Throws when a_n(0) = 0.
TruncSeries ode_series_solve(const DiffOperator& l, const UniPoly& rhs, const std::vector<BigRat>& initial,
                             int order);

struct AiryBasis {
    TruncSeries u1;  // u1(0) = 1, u1'(0) = 0
    TruncSeries u2;  // u2(0) = 0, u2'(0) = 1
};

AiryBasis airy_basis(int order);

/// u v' - u' v
TruncSeries wronskian(const TruncSeries& u, const TruncSeries& v);

enum class RelationKind { identically_zero, constant, nonzero };

struct RelationVerdict {
    RelationKind kind = RelationKind::nonzero;
    BigRat value;              // the constant term
    int first_nonzero = -1;    // smallest k with a nonzero coefficient of z^k
    int checked_through = 0;
};

RelationVerdict verify_polynomial_relation(const MultiPoly& p, std::span<const TruncSeries> args, int order);

std::string to_string(RelationKind k);

struct GrowthRow {
    int n = 0;
    BigRat a;        // n! c_n
    BigRat a_prime;  // 1 / c_n
    double log_a = 0;
    double log_a_prime = 0;
    double alpha_running = 0;  // fit over the window prefix ending at n
    double beta_running = 0;
    bool running_defined = false;
};

enum class GrowthVerdict { not_e_function, not_g_function, inconclusive };

struct GrowthFit {
    double slope = 0;      // coefficient of n log n
    double rate = 0;       // coefficient of n
    double intercept = 0;
};

struct GrowthReport {
    int window_lo = 0;
    int window_hi = 0;
    double margin = 0.1;
    std::vector<GrowthRow> rows;  // nonzero coefficients in the window
    bool a_integral = true;
    bool a_prime_integral = true;
    GrowthFit alpha_fit;
    GrowthFit beta_fit;
    double alpha() const { return alpha_fit.slope; }
    double beta() const { return beta_fit.slope; }
    GrowthVerdict e_verdict = GrowthVerdict::inconclusive;
    GrowthVerdict g_verdict = GrowthVerdict::inconclusive;
};

/// Least squares of log|a_n| and log|a'_n| on (n log n, n, 1) over [lo, hi].
GrowthReport growth_classify(const TruncSeries& s, std::pair<int, int> window, double margin = 0.1);

std::string to_string(GrowthVerdict v);

struct SeriesRelationCheck {
    bool verified = false;
    int checked_through = 0;
    std::vector<TruncSeries> basis;
};

/// For each series basis solution u of L(u) = 0 at 0, checks
/// d/dz(-sum r_i u^(i)) = u through order N - n.
SeriesRelationCheck verify_antiderivative_relation(const TranscendenceCertificate& cert, int order);

}  // namespace diffcert
