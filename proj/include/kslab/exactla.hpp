#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kslab/field.hpp"

namespace kslab {

/// Dense matrix of exact field elements.
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols, const FieldRef& field)
        : rows_(rows), cols_(cols), field_(field), a_(rows * cols, Scalar::zero(field)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldRef& field() const { return field_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ExactMatrix transpose() const;

private:
    std::size_t rows_, cols_;
    FieldRef field_;
    std::vector<Scalar> a_;
};

std::size_t rank(const ExactMatrix& m);

/// Basis of the right nullspace. Deterministic: free columns in ascending
/// order, each basis vector carrying a 1 in its own free column.
std::vector<std::vector<Scalar>> nullspace(const ExactMatrix& m);

/// Any exact solution of M x = b (free variables set to zero), or nullopt
/// when the system is inconsistent.
std::optional<std::vector<Scalar>> solve(const ExactMatrix& m, const std::vector<Scalar>& b);

/// Rank of [M | b] minus rank of M, exposed for inconsistency certificates.
struct SolveRanks {
    std::size_t rank_coeff;
    std::size_t rank_augmented;
};
SolveRanks solve_ranks(const ExactMatrix& m, const std::vector<Scalar>& b);

/// One elimination pass over [M | b]. `partial` is the pivot assignment with
/// free variables zero; it solves the system exactly when `solution` is set,
/// and otherwise leaves a nonzero residual b - M*partial whose support
/// certifies which equations cannot be met.
struct LinearSolveReport {
    std::optional<std::vector<Scalar>> solution;
    std::vector<Scalar> partial;
    std::size_t rank_coeff = 0;
    std::size_t rank_augmented = 0;
};
LinearSolveReport solve_report(const ExactMatrix& m, const std::vector<Scalar>& b);

// ---------------------------------------------------------------------------

struct Exponent {
    int n = 0;  // z (or x) exponent
    int m = 0;  // w (or y) exponent
    int total() const { return n + m; }
    bool mixed() const { return n >= 1 && m >= 1; }
    auto operator<=>(const Exponent&) const = default;
};

enum class MonomialFilter { All, MixedOnly };

/// Exponent pairs of total degree <= d: graded ascending, z-exponent
/// descending within a grade.
std::vector<Exponent> monomial_basis(int d, MonomialFilter filter);

}  // namespace kslab
