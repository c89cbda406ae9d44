#include "diffcert/vfield.hpp"

#include "diffcert/linalg.hpp"

#include <algorithm>
#include <map>

namespace diffcert {

PolyVectorField::PolyVectorField(std::vector<MultiPoly> components) : components_(std::move(components)) {
    const std::size_t n = components_.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (components_[j].nvars() != n) {
            throw Error("component f" + std::to_string(j + 1) + " has " +
                        std::to_string(components_[j].nvars()) + " variables, expected " + std::to_string(n));
        }
        for (const auto& [e, c] : components_[j].terms()) {
            if (y_degree(e) != 1) linear_ = false;
        }
    }
}

const MultiPoly& PolyVectorField::component(std::size_t j) const {
    if (j < 1 || j > components_.size()) throw Error("component index out of range");
    return components_[j - 1];
}

int PolyVectorField::max_z_degree() const {
    int d = 0;
    for (const auto& f : components_) {
        if (!f.is_zero()) d = std::max(d, f.degree_in(0));
    }
    return d;
}

std::string PolyVectorField::str() const {
    std::string out;
    for (std::size_t j = 0; j < components_.size(); ++j) {
        if (j) out += "; ";
        out += "y" + std::to_string(j + 1) + "' = " + components_[j].str();
    }
    return out;
}

MultiPoly Derivation::apply(const MultiPoly& p) const {
    if (p.nvars() != field_.nvars()) {
        throw Error("derivation on " + std::to_string(field_.nvars()) + " variables applied to polynomial in " +
                    std::to_string(p.nvars()));
    }
    MultiPoly r = partial_derivative(p, 0);
    for (std::size_t j = 1; j <= field_.nvars(); ++j) {
        const MultiPoly& f = field_.component(j);
        if (f.is_zero() || p.degree_in(j) <= 0) continue;
        r += f * partial_derivative(p, j);
    }
    return r;
}

Derivation make_derivation(PolyVectorField field) { return Derivation(std::move(field)); }

MultiPoly apply_derivation(const Derivation& d, const MultiPoly& p) { return d.apply(p); }

std::optional<UniPoly> cofactor_of(const Derivation& d, const MultiPoly& p) {
    if (p.is_zero()) throw Error("cofactor of the zero polynomial");
    auto q = exact_divide(d.apply(p), p);
    if (!q || !q->is_y_free()) return std::nullopt;
    return q->as_univariate();
}

namespace {

void check_bounds(SearchBounds b) {
    if (b.z_degree < 0 || b.y_degree < 0) throw Error("search bounds must be nonnegative");
    if (b.z_degree > degree_cap() || b.y_degree > degree_cap()) {
        throw Error("search bounds (" + std::to_string(b.z_degree) + ", " + std::to_string(b.y_degree) +
                    ") exceed the degree cap " + std::to_string(degree_cap()));
    }
}

// Matrix whose column k is the coefficient vector of images[k]; rows are the
// union of the monomials occurring, plus any in `extra_rows`, in grlex order.
Matrix assemble(const std::vector<MultiPoly>& images, std::vector<Exponents>& rows,
                const std::vector<Exponents>& extra_rows = {}) {
    std::map<Exponents, std::size_t, GrlexLess> index;
    for (const auto& e : extra_rows) index.emplace(e, 0);
    for (const auto& img : images) {
        for (const auto& [e, c] : img.terms()) index.emplace(e, 0);
    }
    rows.clear();
    std::size_t r = 0;
    for (auto& [e, idx] : index) {
        idx = r++;
        rows.push_back(e);
    }
    Matrix m(rows.size(), images.size());
    for (std::size_t k = 0; k < images.size(); ++k) {
        for (const auto& [e, c] : images[k].terms()) m.at(index.at(e), k) = c;
    }
    return m;
}

MultiPoly combine(std::size_t nvars, const std::vector<Exponents>& monomials, const std::vector<BigRat>& coeffs,
                  std::size_t offset = 0) {
    MultiPoly p(nvars);
    for (std::size_t k = 0; k < monomials.size(); ++k) p.add_term(monomials[k], coeffs[offset + k]);
    return p;
}

// Reduced echelon basis of span(polys) with columns in decreasing monomial
// order. Unique for the subspace, so results do not depend on how they were found.
std::vector<MultiPoly> canonical_span(std::size_t nvars, const std::vector<MultiPoly>& polys, bool normalize) {
    if (polys.empty()) return {};
    std::map<Exponents, std::size_t, GrlexLess> index;
    for (const auto& p : polys) {
        for (const auto& [e, c] : p.terms()) index.emplace(e, 0);
    }
    std::vector<Exponents> cols;
    for (auto it = index.rbegin(); it != index.rend(); ++it) {
        it->second = cols.size();
        cols.push_back(it->first);
    }
    Matrix m(polys.size(), cols.size());
    for (std::size_t r = 0; r < polys.size(); ++r) {
        for (const auto& [e, c] : polys[r].terms()) m.at(r, index.at(e)) = c;
    }
    RowEchelon e = rref(std::move(m));
    std::vector<MultiPoly> out;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        MultiPoly p(nvars);
        for (std::size_t c = 0; c < cols.size(); ++c) p.add_term(cols[c], e.reduced.at(r, c));
        out.push_back(normalize ? primitive_normalized(p) : p);
    }
    return out;
}

// Top-z-degree part of a linear field acting on y-forms of degree m:
// N(y^a) = sum_j [z^t]f_j * d/dy_j y^a.
Matrix top_degree_action(const PolyVectorField& field, int t, int m, std::vector<Exponents>& forms) {
    const std::size_t n = field.nvars();
    forms = bounded_monomials(n, 0, m, m);
    std::vector<MultiPoly> slices;
    for (std::size_t j = 1; j <= n; ++j) {
        MultiPoly g(n);
        for (const auto& [e, c] : field.component(j).terms()) {
            if (static_cast<int>(e[0]) != t) continue;
            Exponents f = e;
            f[0] = 0;
            g.add_term(f, c);
        }
        slices.push_back(std::move(g));
    }
    std::map<Exponents, std::size_t, GrlexLess> index;
    for (std::size_t k = 0; k < forms.size(); ++k) index.emplace(forms[k], k);
    Matrix a(forms.size(), forms.size());
    for (std::size_t k = 0; k < forms.size(); ++k) {
        MultiPoly mono = MultiPoly::monomial(n, forms[k]);
        MultiPoly img(n);
        for (std::size_t j = 1; j <= n; ++j) {
            if (!slices[j - 1].is_zero()) img += slices[j - 1] * partial_derivative(mono, j);
        }
        for (const auto& [e, c] : img.terms()) a.at(index.at(e), k) = c;
    }
    return a;
}

std::vector<BigRat> rational_eigenvalues(const Matrix& square) {
    std::vector<BigRat> out;
    if (square.rows() == 0) return out;
    for (const auto& r : rational_roots(charpoly(square))) out.push_back(r.value);
    return out;
}

struct CofactorLess {
    bool operator()(const UniPoly& a, const UniPoly& b) const { return poly_less(a, b); }
};

}  // namespace

bool DarbouxSearch::only_constants() const {
    return families.size() == 1 && families[0].cofactor.is_zero() && families[0].basis.size() == 1 &&
           families[0].basis[0].is_constant();
}

std::vector<DarbouxCertificate> DarbouxSearch::certificates() const {
    std::vector<DarbouxCertificate> out;
    for (const auto& fam : families) {
        for (const auto& p : fam.basis) {
            if (p.is_constant()) continue;
            DarbouxCertificate cert{p, fam.cofactor, bounds, DarbouxVerdict::found, false};
            out.push_back(std::move(cert));
        }
    }
    if (out.empty()) {
        std::size_t n = families.empty() || families[0].basis.empty() ? 0 : families[0].basis[0].nvars();
        out.push_back({MultiPoly::constant(n, BigRat(1)), UniPoly(), bounds, DarbouxVerdict::none_in_bounds, false});
    }
    return out;
}

bool AffineDarbouxSolution::c_forced_zero() const {
    return std::all_of(basis.begin(), basis.end(), [](const auto& b) { return b.second.is_zero(); });
}

bool AffineDarbouxSolution::only_constant_p() const {
    return basis.size() == 1 && basis[0].second.is_zero() && basis[0].first.is_constant() &&
           !basis[0].first.is_zero();
}

AffineDarbouxSolution affine_darboux(const Derivation& d, const MultiPoly& forcing, SearchBounds bounds) {
    check_bounds(bounds);
    const std::size_t n = d.nvars();
    if (forcing.nvars() != n) throw Error("forcing term has the wrong number of variables");

    // Groups of (monomials, carries c) solved independently.
    struct Group {
        std::vector<Exponents> monomials;
        bool with_c = false;
    };
    std::vector<Group> groups;
    if (d.field().is_linear()) {
        auto parts = y_homogeneous_components(forcing);
        std::map<int, bool> forced;
        for (const auto& [m, q] : parts) forced[m] = true;
        Group coupled{{}, true};
        for (int m = 0; m <= bounds.y_degree; ++m) {
            auto monos = bounded_monomials(n, bounds.z_degree, bounds.y_degree, m);
            if (forced.count(m)) {
                coupled.monomials.insert(coupled.monomials.end(), monos.begin(), monos.end());
            } else {
                groups.push_back({std::move(monos), false});
            }
        }
        if (!forcing.is_zero()) groups.push_back(std::move(coupled));
    } else {
        groups.push_back({bounded_monomials(n, bounds.z_degree, bounds.y_degree), !forcing.is_zero()});
    }

    std::vector<std::pair<MultiPoly, BigRat>> raw;
    for (const auto& g : groups) {
        std::vector<MultiPoly> images;
        for (const auto& e : g.monomials) images.push_back(d.apply(MultiPoly::monomial(n, e)));
        if (g.with_c) images.push_back(forcing);
        if (images.empty()) continue;
        std::vector<Exponents> rows;
        Matrix m = assemble(images, rows);
        for (const auto& v : kernel(m)) {
            MultiPoly p = combine(n, g.monomials, v);
            BigRat c = g.with_c ? v.back() : BigRat();
            raw.emplace_back(std::move(p), std::move(c));
        }
    }

    // Canonical basis: encode c as an extra leading coordinate.
    std::vector<MultiPoly> encoded;
    for (const auto& [p, c] : raw) {
        MultiPoly q = p.extended(n + 1);
        if (!c.is_zero()) {
            Exponents e(n + 2, 0);
            e[n + 1] = static_cast<std::uint32_t>(degree_cap() + 1);
            q.add_term(e, c);
        }
        encoded.push_back(std::move(q));
    }
    AffineDarbouxSolution out{bounds, forcing, {}};
    for (const auto& q : canonical_span(n + 1, encoded, false)) {
        MultiPoly p(n);
        BigRat c;
        for (const auto& [e, coef] : q.terms()) {
            if (e[n + 1] != 0) {
                c = coef;
                continue;
            }
            Exponents f(e.begin(), e.end() - 1);
            p.add_term(f, coef);
        }
        out.basis.emplace_back(std::move(p), std::move(c));
    }
    return out;
}

FirstIntegralSearch first_integrals(const Derivation& d, SearchBounds bounds) {
    check_bounds(bounds);
    const std::size_t n = d.nvars();
    std::vector<std::vector<Exponents>> groups;
    if (d.field().is_linear()) {
        for (int m = 0; m <= bounds.y_degree; ++m) groups.push_back(bounded_monomials(n, bounds.z_degree, bounds.y_degree, m));
    } else {
        groups.push_back(bounded_monomials(n, bounds.z_degree, bounds.y_degree));
    }
    std::vector<MultiPoly> found;
    for (auto& monos : groups) {
        // Constants are always in the kernel; dropping the monomial 1 quotients them out.
        std::erase_if(monos, [](const Exponents& e) { return total_degree(e) == 0; });
        if (monos.empty()) continue;
        std::vector<MultiPoly> images;
        for (const auto& e : monos) images.push_back(d.apply(MultiPoly::monomial(n, e)));
        std::vector<Exponents> rows;
        Matrix m = assemble(images, rows);
        for (const auto& v : kernel(m)) found.push_back(combine(n, monos, v));
    }
    return {bounds, canonical_span(n, found, true)};
}

DarbouxSearch darboux_search(const Derivation& d, SearchBounds bounds, int cofactor_degree) {
    check_bounds(bounds);
    const PolyVectorField& field = d.field();
    if (!field.is_linear()) throw Error("bilinear Darboux search requires a linear field (f = A(z) y)");
    const std::size_t n = d.nvars();
    const int delta = field.max_z_degree();
    if (cofactor_degree < 0) cofactor_degree = delta;
    // Comparing top z-degrees in Dp = w p forces the coefficients of z^t, t > delta, to vanish.
    const int eff = std::min(cofactor_degree, delta);
    if (eff >= 2 || (eff == 1 && delta != 1)) {
        throw Error("bilinear Darboux search supports cofactors with at most a top and a constant coefficient "
                    "(field z-degree " + std::to_string(delta) + ", cofactor degree " +
                    std::to_string(cofactor_degree) + ")");
    }

    std::map<UniPoly, std::vector<MultiPoly>, CofactorLess> by_cofactor;
    for (int m = 0; m <= bounds.y_degree; ++m) {
        const auto monos = bounded_monomials(n, bounds.z_degree, bounds.y_degree, m);
        std::vector<MultiPoly> d_images;
        for (const auto& e : monos) d_images.push_back(d.apply(MultiPoly::monomial(n, e)));

        std::vector<BigRat> top_candidates{BigRat(0)};
        if (eff == 1) {
            std::vector<Exponents> forms;
            top_candidates = rational_eigenvalues(top_degree_action(field, 1, m, forms));
        }
        for (const auto& top : top_candidates) {
            std::vector<MultiPoly> shifted;
            for (std::size_t k = 0; k < monos.size(); ++k) {
                MultiPoly img = d_images[k];
                if (!top.is_zero()) {
                    img -= MultiPoly::z(n) * MultiPoly::monomial(n, monos[k], top);
                }
                shifted.push_back(std::move(img));
            }
            // Restricting (D - top z - w0) p = 0 to the rows of the search space
            // leaves a square system: w0 must be one of its eigenvalues.
            std::map<Exponents, std::size_t, GrlexLess> index;
            for (std::size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], k);
            Matrix sq(monos.size(), monos.size());
            for (std::size_t k = 0; k < monos.size(); ++k) {
                for (const auto& [e, c] : shifted[k].terms()) {
                    auto it = index.find(e);
                    if (it != index.end()) sq.at(it->second, k) = c;
                }
            }
            for (const auto& w0 : rational_eigenvalues(sq)) {
                std::vector<MultiPoly> images;
                for (std::size_t k = 0; k < monos.size(); ++k) {
                    images.push_back(shifted[k] - MultiPoly::monomial(n, monos[k], w0));
                }
                std::vector<Exponents> rows;
                Matrix mat = assemble(images, rows);
                auto ker = kernel(mat);
                if (ker.empty()) continue;
                UniPoly w(std::vector<BigRat>{w0, top});
                auto& bucket = by_cofactor[w];
                for (const auto& v : ker) bucket.push_back(combine(n, monos, v));
            }
        }
    }

    DarbouxSearch out;
    out.bounds = bounds;
    out.cofactor_degree = cofactor_degree;
    out.effective_cofactor_degree = eff;
    for (auto& [w, polys] : by_cofactor) out.families.push_back({w, canonical_span(n, polys, true)});
    return out;
}

DarbouxSolution solve_affine_darboux(const Derivation& d, const MultiPoly& forcing, SearchBounds bounds,
                                     int cofactor_degree) {
    if (!forcing.is_zero()) return affine_darboux(d, forcing, bounds);
    if (cofactor_degree <= 0) return first_integrals(d, bounds);
    return darboux_search(d, bounds, cofactor_degree);
}

TotalDerivativeCheck verify_total_derivative(const Derivation& d, const MultiPoly& q,
                                             const std::vector<TruncSeries>& sols, int order) {
    const std::size_t n = d.nvars();
    if (sols.size() != n) throw Error("need " + std::to_string(n) + " solution series");
    if (q.nvars() != n) throw Error("polynomial has the wrong number of variables");
    if (order < 1) throw Error("order must be at least 1");
    for (const auto& s : sols) {
        if (s.order() < order) throw Error("solution series shorter than the requested order");
    }
    const int through = order - 1;
    for (std::size_t j = 1; j <= n; ++j) {
        TruncSeries lhs = derivative(sols[j - 1].truncated(order)).truncated(through);
        TruncSeries rhs = substitute(d.field().component(j), sols, through);
        for (int k = 0; k <= through; ++k) {
            if (lhs.coeff(k) != rhs.coeff(k)) {
                throw Error("series for y" + std::to_string(j) + " does not satisfy y" + std::to_string(j) +
                            "' = f" + std::to_string(j) + " (first mismatch at z^" + std::to_string(k) + ")");
            }
        }
    }
    TotalDerivativeCheck out;
    out.checked_through = through;
    out.lhs = derivative(substitute(q, sols, order));
    out.rhs = substitute(d.apply(q), sols, through);
    out.verified = out.lhs == out.rhs;
    return out;
}

}  // namespace diffcert
