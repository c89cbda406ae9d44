#include "diffcert/linalg.hpp"

#include <utility>

namespace diffcert {

std::vector<BigRat> Matrix::multiply(std::span<const BigRat> x) const {
    if (x.size() != cols_) throw Error("matrix-vector size mismatch");
    std::vector<BigRat> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const BigRat& a = at(r, c);
            if (!a.is_zero() && !x[c].is_zero()) y[r] += a * x[c];
        }
    }
    return y;
}

RowEchelon rref(Matrix m) {
    RowEchelon out;
    std::size_t row = 0;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != row) {
            for (std::size_t c = col; c < cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
        }
        BigRat inv = m.at(row, col).inverse();
        std::vector<std::size_t> nz;
        for (std::size_t c = col; c < cols; ++c) {
            if (!m.at(row, c).is_zero()) {
                m.at(row, c) *= inv;
                nz.push_back(c);
            }
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            BigRat factor = m.at(r, col);
            for (std::size_t c : nz) m.at(r, c) -= factor * m.at(row, c);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

std::vector<std::vector<BigRat>> kernel(const Matrix& m) {
    RowEchelon e = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<BigRat>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<BigRat> v(cols);
        v[free] = BigRat(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            const BigRat& a = e.reduced.at(r, free);
            if (!a.is_zero()) v[e.pivots[r]] = -a;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

AffineSolution solve_affine(const Matrix& a, std::span<const BigRat> b) {
    if (b.size() != a.rows()) throw Error("right-hand side size mismatch");
    const std::size_t cols = a.cols();
    Matrix aug(a.rows(), cols + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, cols) = b[r];
    }
    RowEchelon e = rref(std::move(aug));
    AffineSolution out;
    if (!e.pivots.empty() && e.pivots.back() == cols) return out;
    out.consistent = true;
    out.particular.assign(cols, BigRat());
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        is_pivot[e.pivots[r]] = true;
        out.particular[e.pivots[r]] = e.reduced.at(r, cols);
    }
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<BigRat> v(cols);
        v[free] = BigRat(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            const BigRat& x = e.reduced.at(r, free);
            if (!x.is_zero()) v[e.pivots[r]] = -x;
        }
        out.homogeneous.push_back(std::move(v));
    }
    return out;
}

UniPoly charpoly(const Matrix& square) {
    if (square.rows() != square.cols()) throw Error("charpoly of non-square matrix");
    const std::size_t n = square.rows();
    Matrix h = square;
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t i = j + 1;
        while (i < n && h.at(i, j).is_zero()) ++i;
        if (i == n) continue;
        if (i != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h.at(i, c), h.at(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h.at(r, i), h.at(r, j + 1));
        }
        BigRat inv = h.at(j + 1, j).inverse();
        for (std::size_t r = j + 2; r < n; ++r) {
            if (h.at(r, j).is_zero()) continue;
            BigRat u = h.at(r, j) * inv;
            for (std::size_t c = 0; c < n; ++c) {
                if (!h.at(j + 1, c).is_zero()) h.at(r, c) -= u * h.at(j + 1, c);
            }
            for (std::size_t rr = 0; rr < n; ++rr) {
                if (!h.at(rr, r).is_zero()) h.at(rr, j + 1) += u * h.at(rr, r);
            }
        }
    }
    // p_k = (t - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod of subdiagonal) p_{k-i-1}, 1-based.
    std::vector<UniPoly> p;
    p.reserve(n + 1);
    p.emplace_back(BigRat(1));
    const UniPoly t = UniPoly::z();
    for (std::size_t k = 1; k <= n; ++k) {
        UniPoly pk = (t - UniPoly(h.at(k - 1, k - 1))) * p[k - 1];
        BigRat prod(1);
        for (std::size_t i = 1; i < k; ++i) {
            prod *= h.at(k - i, k - i - 1);
            if (prod.is_zero()) break;
            const BigRat& top = h.at(k - i - 1, k - 1);
            if (!top.is_zero()) pk -= (top * prod) * p[k - i - 1];
        }
        p.push_back(std::move(pk));
    }
    return p.back();
}

}  // namespace diffcert
