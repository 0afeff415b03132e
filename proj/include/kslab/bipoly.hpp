#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kslab/exactla.hpp"
#include "kslab/field.hpp"

namespace kslab {

/// Canonical monomial order: (total degree, z-exponent) descending. Maps and
/// the text printer iterate in this order.
struct CanonicalLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        if (a.total() != b.total()) return a.total() > b.total();
        return a.n > b.n;
    }
};

enum class VarPair { ZW, XY };

/// Sparse bivariate polynomial over one exact field; zero coefficients are
/// never stored.
class BiPoly {
public:
    using TermMap = std::map<Exponent, Scalar, CanonicalLess>;

    explicit BiPoly(const FieldRef& field, VarPair vars = VarPair::ZW)
        : field_(field), vars_(vars) {}

    static BiPoly zero(const FieldRef& field, VarPair vars = VarPair::ZW) {
        return BiPoly(field, vars);
    }
    static BiPoly constant(const Scalar& c, VarPair vars = VarPair::ZW);
    static BiPoly monomial(const Scalar& c, int n, int m, VarPair vars = VarPair::ZW);

    const FieldRef& field() const { return field_; }
    VarPair vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0}); }
    int total_degree() const;  // -1 for the zero polynomial
    int degree_in_z() const;
    int degree_in_w() const;
    std::size_t term_count() const { return terms_.size(); }

    Scalar coeff(int n, int m) const;
    void set_coeff(int n, int m, const Scalar& c);
    void add_term(int n, int m, const Scalar& c);

    BiPoly operator-() const;
    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const Scalar& c) const;
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }

    bool operator==(const BiPoly& o) const;
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    /// Full evaluation at (zval, wval).
    Scalar eval(const Scalar& zval, const Scalar& wval) const;
    /// Substitute polynomials for both variables.
    BiPoly compose(const BiPoly& zsub, const BiPoly& wsub) const;
    /// Coefficient of w^j, as a polynomial in z only.
    BiPoly coeff_of_w(int j) const;
    /// Leading term in the canonical order.
    std::pair<Exponent, Scalar> leading() const;
    /// Scale so the lexicographically greatest monomial (z-exponent first) has
    /// coefficient 1.
    BiPoly unit_normalized() const;

    /// Canonical text form; `i` for the imaginary unit, coefficients in lowest
    /// terms, monomials in canonical order.
    std::string str() const;

private:
    FieldRef field_;
    VarPair vars_;
    TermMap terms_;
};

inline BiPoly operator*(const Scalar& c, const BiPoly& p) { return p * c; }

/// exact_divide(p, q) failed: q does not divide p. Carries the nonzero
/// division remainder as a witness.
class ExactDivisionError : public std::runtime_error {
public:
    ExactDivisionError(std::string msg, BiPoly remainder)
        : std::runtime_error(std::move(msg)), remainder_(std::move(remainder)) {}
    const BiPoly& remainder() const { return remainder_; }

private:
    BiPoly remainder_;
};

/// Exact quotient p / q; throws ExactDivisionError when q does not divide p.
BiPoly exact_divide(const BiPoly& p, const BiPoly& q);
/// Quotient and remainder of division by a single divisor in the canonical
/// monomial order; remainder is zero exactly when q | p.
std::pair<BiPoly, BiPoly> divide_with_remainder(const BiPoly& p, const BiPoly& q);

/// The degree-lowering operator z^n w^m -> z^{n-1} w^{m-1} (zero when either
/// exponent is zero), extended linearly. Its kernel is F[z] + F[w].
BiPoly fischer_D(const BiPoly& p);
/// Monomials with both exponents >= 1.
BiPoly mixed_part(const BiPoly& p);
/// Membership in F[z] + F[w].
bool is_harmonic(const BiPoly& p);

/// Sum p_i(z) w^i  ->  sum conj(p_i)(w) z^i: swap variables and conjugate
/// coefficients. Needs a field with conjugation (Q, Q(i)).
BiPoly hermitian_reflect(const BiPoly& p);

/// GCD, unit-normalized (lexicographically greatest monomial monic).
BiPoly gcd(const BiPoly& p, const BiPoly& q);

/// Rank of the coefficient matrix (rows: z-exponents, cols: w-exponents).
/// <= 2 exactly for polynomials of the form a(z)b(w) + a1(z)b1(w).
std::size_t separable_rank(const BiPoly& p);

/// x = (z+w)/2, y = (z-w)/(2i): rewrite a real x,y-polynomial in the
/// variables z, w over Q(i).
BiPoly to_zw(const BiPoly& p_xy);
/// Inverse substitution z = x+iy, w = x-iy. Requires conjugate-symmetric
/// coefficients (real-valued on w = conj(z)); returns a polynomial over Q.
BiPoly to_xy(const BiPoly& p_zw);
/// Whether coeff(n,m) == conj(coeff(m,n)) for all terms.
bool is_conjugate_symmetric(const BiPoly& p_zw);

enum class ConicClass {
    Circle,
    Ellipse,
    Parabola,
    Hyperbola,
    Line,
    LinePairDegenerate,
    PointOrEmpty,
    NotAConic,
};
std::string to_string(ConicClass c);

/// Classify a real conic A x^2 + B xy + C y^2 + D x + E y + F by the
/// discriminant B^2 - 4AC and the 3x3 quadratic-form determinant.
/// Characteristic 0 only.
ConicClass classify_conic(const BiPoly& p_xy);

}  // namespace kslab
