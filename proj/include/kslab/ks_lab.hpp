#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kslab/fischer.hpp"

namespace kslab {

// ---------------------------------------------------------------------------
// Structural classifiers

enum class StructuralCriterion { LinearInZ, ProductForm, DegreeDivisibility, ZeroPair };
enum class StructuralOutcome { KS, NotKS, ConjectureHolds, Inconclusive, NotApplicable };

std::string to_string(StructuralCriterion c);
std::string to_string(StructuralOutcome o);

struct StructuralVerdict {
    StructuralCriterion criterion;
    StructuralOutcome outcome;
    std::string detail;
    std::vector<std::pair<std::string, BiPoly>> witness_polys;
};

/// For f linear in z (or symmetrically in w), decide the KS property exactly:
/// writing f = c(w) z - g(w), f is KS iff deg(c) <= 1. NotApplicable when f
/// is linear in neither variable.
StructuralVerdict classify_linear_in_z(const BiPoly& f);

/// Product-form criterion: an irreducible f nonlinear in both variables that
/// divides a nonzero polynomial of separable rank <= 2 is not KS.
/// Irreducibility is the caller's claim (flag), not computed here.
StructuralVerdict check_product_form(const BiPoly& f, const BiPoly& g, bool irreducibility_assumed);

/// For irreducible h1, h2 with 1 <= deg h1 <= deg h2 and deg h1 not dividing
/// deg h2: no polynomial h1(z) phi + h2(w) psi of total degree > 2 nonlinear
/// in both variables is KS. Inconclusive when deg h1 | deg h2.
StructuralVerdict degree_divisibility_criterion(int deg_h1, int deg_h2);

// ---------------------------------------------------------------------------
// Monomial reduction scans

FischerOutcome reduce_monomial(const BiPoly& f, int n, int m, int max_cofactor_deg);

enum class KsVerdict { ConsistentWithKS, RefutedAtBound, RefutedStructurally };
std::string to_string(KsVerdict v);

struct KsReport {
    BiPoly f;
    int max_monomial_degree;  // N
    int max_cofactor_degree;  // K
    std::vector<std::pair<Exponent, FischerOutcome>> outcomes;
    KsVerdict verdict;
    std::optional<StructuralVerdict> structural;

    bool all_succeeded() const;
};

/// Reduce every mixed monomial z^n w^m with n + m <= N against f, bounding
/// cofactor degrees by K. Monomial reductions run on OpenMP workers; outcomes
/// are aggregated in monomial order, so reports do not depend on scheduling.
KsReport ks_scan(const BiPoly& f, int max_monomial_degree, int max_cofactor_degree);
/// Single-threaded reference implementation with identical output.
KsReport ks_scan_serial(const BiPoly& f, int max_monomial_degree, int max_cofactor_degree);

// ---------------------------------------------------------------------------
// Transfer to F_p

struct ModpRejection {
    std::uint64_t p;
    std::string reason;
    std::vector<Exponent> dying_monomials;
};
using ModpResult = std::variant<BiPoly, ModpRejection>;

/// Clear denominators to a primitive integer representative and reduce mod p.
/// Q(i) coefficients map through the smaller root of t^2 + 1 when
/// p = 1 (mod 4) and are rejected otherwise. Any p that kills a support
/// element is rejected with the dying monomials listed, so the support is
/// preserved exactly on success.
ModpResult modp_transfer(const BiPoly& f, std::uint64_t p);

// ---------------------------------------------------------------------------
// Irreducibility helpers (integer coefficients, ascending)

bool eisenstein_check(const std::vector<mpz_class>& h, std::uint64_t p);
std::uint64_t totient(std::uint64_t m);

}  // namespace kslab
