#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "kslab/bipoly.hpp"

namespace kslab {

/// Certificate phi = f*g + h1(z) + h2(w), exact, with h2(0) = 0 (the constant
/// term lives in h1).
struct FischerDecomposition {
    BiPoly f;
    BiPoly phi;
    BiPoly g;
    BiPoly h1;
    BiPoly h2;

    /// Re-expand and compare; the defining identity must hold exactly.
    bool verify() const { return phi == f * g + h1 + h2 && is_harmonic(h1 + h2); }
};

/// No cofactor of total degree <= max_cofactor_deg reduces phi modulo f.
/// Evidence, not a refutation: the rank data certify the inconsistency of the
/// bounded linear system, and `unsatisfied` lists the mixed monomials left
/// unmatched by the canonical partial solution.
struct BoundedFailure {
    int max_cofactor_deg;
    std::size_t rank;
    std::size_t nullity;
    std::size_t rank_augmented;
    std::vector<Exponent> unsatisfied;
};

using FischerOutcome = std::variant<FischerDecomposition, BoundedFailure>;

inline bool solved(const FischerOutcome& o) {
    return std::holds_alternative<FischerDecomposition>(o);
}

/// f * g = product, product harmonic, g nonzero: a witness that f divides a
/// nonzero harmonic polynomial.
struct HarmonicMultipleWitness {
    BiPoly f;
    BiPoly g;
    BiPoly product;
};

/// Search for a nonzero cofactor g of total degree <= max_cofactor_deg with
/// f*g harmonic, via the nullspace of mixed_part(f*g) = 0 in the unknown
/// coefficients of g. Returns the first nullspace basis vector (canonical
/// column order), normalized monic in its canonical leading coefficient.
std::optional<HarmonicMultipleWitness> harmonic_multiple_search(const BiPoly& f,
                                                                int max_cofactor_deg);

/// Solve phi = f*g + h1 + h2 with deg(g) <= K. Automatic mode takes
/// K = max(deg(phi) - deg(f), 0), which is guaranteed sufficient for
/// quadratic f dividing no nonzero harmonic polynomial.
FischerOutcome fischer_solve(const BiPoly& f, const BiPoly& phi,
                             std::optional<int> max_cofactor_deg = std::nullopt);

/// Exact polynomial solution of the Dirichlet problem on an ellipse/circle
/// boundary with polynomial data: returns harmonic u with u - data exactly
/// divisible by the boundary polynomial.
BiPoly dirichlet_ellipse(const BiPoly& boundary_xy, const BiPoly& data_xy);

/// Polynomial in a formal variable r with BiPoly coefficients
/// (coeffs[j] multiplies r^j).
struct RPoly {
    std::vector<BiPoly> coeffs;

    RPoly() = default;
    explicit RPoly(const FieldRef& field, int deg = 0)
        : coeffs(static_cast<std::size_t>(deg) + 1, BiPoly::zero(field)) {}

    const BiPoly& coeff(int j) const { return coeffs.at(static_cast<std::size_t>(j)); }
    bool even_in_r() const;
    bool operator==(const RPoly& o) const;
    RPoly operator-(const RPoly& o) const;
    std::string str() const;
};

/// Expand (r+s+t)(r+s-t)(r-s+t)(r-s-t) in F[z,w][r,s,t] / (s^2 - F, t^2 - G);
/// the result is a polynomial in r alone: r^4 - 2(F+G)r^2 + (F-G)^2.
RPoly quartic_expand(const BiPoly& F, const BiPoly& G);

/// The expansion side by side with the quartic r^4 - 4(F+G)r^2 + (F-G)^2 and
/// their difference 2(F+G)r^2. The discrepancy is data, not an error.
struct QuarticCheck {
    RPoly expanded;
    RPoly reference;
    RPoly difference;  // expanded - reference
    bool matches;
};

QuarticCheck quartic_check(const BiPoly& F, const BiPoly& G);

}  // namespace kslab
