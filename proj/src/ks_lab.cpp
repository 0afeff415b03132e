#include "kslab/ks_lab.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kslab/exactla.hpp"

namespace kslab {

std::string to_string(StructuralCriterion c) {
    switch (c) {
        case StructuralCriterion::LinearInZ: return "linear-in-z";
        case StructuralCriterion::ProductForm: return "product-form";
        case StructuralCriterion::DegreeDivisibility: return "degree-divisibility";
        case StructuralCriterion::ZeroPair: return "zero-pair";
    }
    return "?";
}

std::string to_string(StructuralOutcome o) {
    switch (o) {
        case StructuralOutcome::KS: return "KS";
        case StructuralOutcome::NotKS: return "not-KS";
        case StructuralOutcome::ConjectureHolds: return "conjecture-holds";
        case StructuralOutcome::Inconclusive: return "inconclusive";
        case StructuralOutcome::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::string to_string(KsVerdict v) {
    switch (v) {
        case KsVerdict::ConsistentWithKS: return "consistent-with-KS";
        case KsVerdict::RefutedAtBound: return "refuted-at-bound";
        case KsVerdict::RefutedStructurally: return "refuted-structurally";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

// f = c(w) z - g(w) for deg_z(f) = 1; mirrored when swap is set.
StructuralVerdict classify_linear_one_sided(const BiPoly& f, bool swapped) {
    BiPoly work = f;
    if (swapped) {
        BiPoly t(f.field(), f.vars());
        for (const auto& [e, c] : f.terms()) t.set_coeff(e.m, e.n, c);
        work = t;
    }
    BiPoly c(f.field()), g(f.field());
    for (const auto& [e, coeff] : work.terms()) {
        if (e.n == 1)
            c.set_coeff(0, e.m, coeff);
        else
            g.set_coeff(0, e.m, -coeff);
    }
    const char* zname = swapped ? "w" : "z";
    const char* wname = swapped ? "z" : "w";
    std::string form = std::string("f = c(") + wname + ")*" + zname + " - g(" + wname + ")";
    int cdeg = c.total_degree();
    if (cdeg <= 1) {
        return {StructuralCriterion::LinearInZ, StructuralOutcome::KS,
                form + " with deg(c) = " + std::to_string(cdeg) + " <= 1, so f is a KS-polynomial",
                {{"c", c}, {"g", g}}};
    }
    return {StructuralCriterion::LinearInZ, StructuralOutcome::NotKS,
            form + " with deg(c) = " + std::to_string(cdeg) +
                " > 1: c would have to divide a linear polynomial",
            {{"c", c}, {"g", g}}};
}

}  // namespace

StructuralVerdict classify_linear_in_z(const BiPoly& f) {
    if (f.degree_in_z() == 1) return classify_linear_one_sided(f, false);
    if (f.degree_in_w() == 1) return classify_linear_one_sided(f, true);
    return {StructuralCriterion::LinearInZ, StructuralOutcome::NotApplicable,
            "f is linear in neither variable",
            {}};
}

StructuralVerdict check_product_form(const BiPoly& f, const BiPoly& g, bool irreducibility_assumed) {
    if (g.is_zero()) throw std::invalid_argument("check_product_form: g must be nonzero");
    BiPoly product = f * g;
    std::size_t rank = separable_rank(product);
    bool nonlinear_both = f.degree_in_z() >= 2 && f.degree_in_w() >= 2;
    std::string rank_note = "separable_rank(f*g) = " + std::to_string(rank);
    if (rank <= 2 && nonlinear_both && irreducibility_assumed) {
        return {StructuralCriterion::ProductForm, StructuralOutcome::NotKS,
                rank_note + " <= 2, f nonlinear in both variables and assumed irreducible",
                {{"product", product}}};
    }
    std::string why = rank > 2                  ? rank_note + " > 2"
                      : !nonlinear_both         ? "f is linear in some variable"
                      : !irreducibility_assumed ? "irreducibility not asserted by caller"
                                                : "";
    return {StructuralCriterion::ProductForm, StructuralOutcome::Inconclusive, why,
            {{"product", product}}};
}

StructuralVerdict degree_divisibility_criterion(int deg_h1, int deg_h2) {
    if (deg_h1 < 1 || deg_h2 < deg_h1)
        throw std::invalid_argument("degree_divisibility_criterion needs 1 <= deg(h1) <= deg(h2)");
    if (deg_h2 % deg_h1 != 0) {
        return {StructuralCriterion::DegreeDivisibility, StructuralOutcome::ConjectureHolds,
                std::to_string(deg_h1) + " does not divide " + std::to_string(deg_h2) +
                    ": no h1(z)*phi + h2(w)*psi of total degree > 2 nonlinear in both variables "
                    "is KS (h1, h2 irreducible)",
                {}};
    }
    return {StructuralCriterion::DegreeDivisibility, StructuralOutcome::Inconclusive,
            std::to_string(deg_h1) + " divides " + std::to_string(deg_h2) +
                "; the splitting-field branch is out of scope here",
            {}};
}

// ---------------------------------------------------------------------------

FischerOutcome reduce_monomial(const BiPoly& f, int n, int m, int max_cofactor_deg) {
    if (n < 1 || m < 1) throw std::invalid_argument("reduce_monomial needs a mixed monomial");
    if (max_cofactor_deg < 0) throw std::invalid_argument("negative cofactor degree bound");
    BiPoly phi = BiPoly::monomial(Scalar::one(f.field()), n, m, f.vars());
    return fischer_solve(f, phi, max_cofactor_deg);
}

bool KsReport::all_succeeded() const {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const auto& o) { return solved(o.second); });
}

namespace {

KsReport scan_impl(const BiPoly& f, int N, int K, bool parallel) {
    if (N < 2) throw std::invalid_argument("ks_scan needs max monomial degree >= 2");
    if (K < 0) throw std::invalid_argument("ks_scan needs max cofactor degree >= 0");

    std::vector<Exponent> monomials = monomial_basis(N, MonomialFilter::MixedOnly);
    std::vector<std::optional<FischerOutcome>> slots(monomials.size());

    std::exception_ptr error;
    const int count = static_cast<int>(monomials.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int i = 0; i < count; ++i) {
        try {
            slots[i] = reduce_monomial(f, monomials[i].n, monomials[i].m, K);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    KsReport report{f, N, K, {}, KsVerdict::ConsistentWithKS, {}};
    report.outcomes.reserve(monomials.size());
    for (int i = 0; i < count; ++i) report.outcomes.emplace_back(monomials[i], std::move(*slots[i]));

    StructuralVerdict structural = classify_linear_in_z(f);
    if (structural.outcome != StructuralOutcome::NotApplicable) report.structural = structural;

    if (report.all_succeeded())
        report.verdict = KsVerdict::ConsistentWithKS;
    else if (structural.outcome == StructuralOutcome::NotKS)
        report.verdict = KsVerdict::RefutedStructurally;
    else
        report.verdict = KsVerdict::RefutedAtBound;
    return report;
}

}  // namespace

KsReport ks_scan(const BiPoly& f, int N, int K) { return scan_impl(f, N, K, true); }
KsReport ks_scan_serial(const BiPoly& f, int N, int K) { return scan_impl(f, N, K, false); }

// ---------------------------------------------------------------------------
// modp transfer

namespace {

struct IntPair {
    mpz_class re, im;
};

}  // namespace

ModpResult modp_transfer(const BiPoly& f, std::uint64_t p) {
    if (!f.field()->has_conjugation())
        throw std::invalid_argument("modp_transfer expects coefficients in Q or Q(i)");
    if (!fp64::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (f.is_zero()) throw std::invalid_argument("modp_transfer: zero polynomial");

    const bool gaussian = f.field()->kind == FieldKind::QI;
    auto parts = [&](const Scalar& c) -> std::pair<Rational, Rational> {
        if (gaussian) return {c.gauss().re(), c.gauss().im()};
        return {c.rat(), Rational()};
    };

    // common denominator
    mpz_class lcm = 1;
    for (const auto& [e, c] : f.terms()) {
        auto [re, im] = parts(c);
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), re.den().get_mpz_t());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), im.den().get_mpz_t());
    }
    // integer coefficients, then content
    std::vector<std::pair<Exponent, IntPair>> ints;
    mpz_class content = 0;
    for (const auto& [e, c] : f.terms()) {
        auto [re, im] = parts(c);
        IntPair ip{re.num() * (lcm / re.den()), im.num() * (lcm / im.den())};
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ip.re.get_mpz_t());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ip.im.get_mpz_t());
        ints.emplace_back(e, std::move(ip));
    }
    bool has_imaginary = false;
    for (auto& [e, ip] : ints) {
        ip.re /= content;
        ip.im /= content;
        if (ip.im != 0) has_imaginary = true;
    }

    std::uint64_t root = 0;  // image of i
    if (has_imaginary) {
        if (p % 4 != 1) {
            return ModpRejection{p,
                                 "t^2+1 has no root mod " + std::to_string(p) +
                                     " (p = 3 mod 4 or p = 2); non-real coefficients cannot map",
                                 {}};
        }
        for (std::uint64_t x = 2;; ++x) {
            std::uint64_t r = fp64::pow(x, (p - 1) / 4, p);
            if (fp64::mul(r, r, p) == p - 1) {
                root = std::min(r, p - r);
                break;
            }
        }
    }

    BiPoly out(field_fp(p), f.vars());
    std::vector<Exponent> dying;
    for (const auto& [e, ip] : ints) {
        std::uint64_t v = fp64::add(fp64::reduce(ip.re, p), fp64::mul(fp64::reduce(ip.im, p), root, p), p);
        if (v == 0)
            dying.push_back(e);
        else
            out.set_coeff(e.n, e.m, Scalar::from_fp(field_fp(p), v));
    }
    if (!dying.empty())
        return ModpRejection{p, "support collapses mod " + std::to_string(p), std::move(dying)};
    return out;
}

// ---------------------------------------------------------------------------

bool eisenstein_check(const std::vector<mpz_class>& h, std::uint64_t p) {
    std::vector<mpz_class> c = h;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("eisenstein_check needs a nonconstant polynomial");
    mpz_class pz(p);
    if (c.back() % pz == 0) return false;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i] % pz != 0) return false;
    return c.front() % (pz * pz) != 0;
}

std::uint64_t totient(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("totient(0) is undefined");
    std::uint64_t result = m, rest = m;
    for (std::uint64_t q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        result -= result / q;
        while (rest % q == 0) rest /= q;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

}  // namespace kslab
