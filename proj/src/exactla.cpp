#include "kslab/exactla.hpp"

#include <stdexcept>

namespace kslab {

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

namespace {

struct Echelon {
    ExactMatrix m;                         // reduced row echelon form
    std::vector<std::size_t> pivot_cols;   // ascending
};

// Gauss-Jordan with first-nonzero pivot selection; exact arithmetic makes
// pivot magnitude irrelevant. Pivots are only taken in the first
// `pivotable` columns (all, by default).
Echelon rref(ExactMatrix m, std::size_t pivotable) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivotable && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m.at(sel, c).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar inv = m.at(r, c).inv();
        for (std::size_t j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (std::size_t j = c; j < cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

Echelon rref(ExactMatrix m) {
    std::size_t cols = m.cols();
    return rref(std::move(m), cols);
}

}  // namespace

std::size_t rank(const ExactMatrix& m) { return rref(m).pivot_cols.size(); }

std::vector<std::vector<Scalar>> nullspace(const ExactMatrix& m) {
    Echelon e = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    const Scalar zero = Scalar::zero(m.field());
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols, zero);
        v[free] = Scalar::one(m.field());
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            v[e.pivot_cols[i]] = -e.m.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

ExactMatrix augment(const ExactMatrix& m, const std::vector<Scalar>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong length");
    ExactMatrix a(m.rows(), m.cols() + 1, m.field());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) a.at(i, j) = m.at(i, j);
        a.at(i, m.cols()) = b[i];
    }
    return a;
}

}  // namespace

LinearSolveReport solve_report(const ExactMatrix& m, const std::vector<Scalar>& b) {
    const std::size_t n = m.cols();
    Echelon e = rref(augment(m, b), n);  // never pivot in the augmented column
    LinearSolveReport rep;
    rep.rank_coeff = e.pivot_cols.size();
    rep.partial.assign(n, Scalar::zero(m.field()));
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) rep.partial[e.pivot_cols[i]] = e.m.at(i, n);
    bool inconsistent = false;
    for (std::size_t i = e.pivot_cols.size(); i < m.rows(); ++i)
        if (!e.m.at(i, n).is_zero()) inconsistent = true;
    rep.rank_augmented = rep.rank_coeff + (inconsistent ? 1 : 0);
    if (!inconsistent) rep.solution = rep.partial;
    return rep;
}

std::optional<std::vector<Scalar>> solve(const ExactMatrix& m, const std::vector<Scalar>& b) {
    return solve_report(m, b).solution;
}

SolveRanks solve_ranks(const ExactMatrix& m, const std::vector<Scalar>& b) {
    LinearSolveReport rep = solve_report(m, b);
    return {rep.rank_coeff, rep.rank_augmented};
}

std::vector<Exponent> monomial_basis(int d, MonomialFilter filter) {
    if (d < 0) throw std::invalid_argument("negative degree bound");
    std::vector<Exponent> out;
    for (int total = 0; total <= d; ++total) {
        for (int n = total; n >= 0; --n) {
            Exponent e{n, total - n};
            if (filter == MonomialFilter::MixedOnly && !e.mixed()) continue;
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace kslab
