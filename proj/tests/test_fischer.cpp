#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/fischer.hpp"
#include "test_support.hpp"

using namespace kslab;
using kslab::testing::mono;

namespace {

const FieldRef Q = field_q();
const FieldRef QI = field_qi();

BiPoly xy(std::initializer_list<std::tuple<int, int, long, long>> terms) {
    BiPoly p(Q, VarPair::XY);
    for (auto [n, m, num, den] : terms)
        p.add_term(n, m, Scalar::from_rational(Q, Rational(mpz_class(num), mpz_class(den))));
    return p;
}

// Independent harmonicity oracle: the real Laplacian u_xx + u_yy.
BiPoly laplacian_xy(const BiPoly& u) {
    BiPoly out(u.field(), VarPair::XY);
    for (const auto& [e, c] : u.terms()) {
        if (e.n >= 2) out.add_term(e.n - 2, e.m, c * Scalar::from_int(u.field(), e.n * (e.n - 1)));
        if (e.m >= 2) out.add_term(e.n, e.m - 2, c * Scalar::from_int(u.field(), e.m * (e.m - 1)));
    }
    return out;
}

const BiPoly unit_circle = mono(Q, 1, 1) - mono(Q, 0, 0);  // zw - 1

}  // namespace

TEST_CASE("harmonic multiple search: divisor in F[z]") {
    auto w = harmonic_multiple_search(mono(Q, 1, 0), 3);
    REQUIRE(w.has_value());
    CHECK(!w->g.is_zero());
    CHECK(w->f * w->g == w->product);
    CHECK(is_harmonic(w->product));
}

TEST_CASE("harmonic multiple search: zw - 1 divides no nonzero harmonic polynomial") {
    CHECK(!harmonic_multiple_search(unit_circle, 6).has_value());
    // supporting randomized evidence at the same bound
    std::mt19937_64 rng(77);
    for (int t = 0; t < 100; ++t) {
        BiPoly g = kslab::testing::nonzero_random_bipoly(Q, rng, 6, 6);
        CHECK(!is_harmonic(unit_circle * g));
    }
}

TEST_CASE("harmonic multiple search: z + w yields g = z - w") {
    auto w = harmonic_multiple_search(mono(Q, 1, 0) + mono(Q, 0, 1), 1);
    REQUIRE(w.has_value());
    CHECK(w->g == mono(Q, 1, 0) - mono(Q, 0, 1));
    CHECK(w->product == mono(Q, 2, 0) - mono(Q, 0, 2));
}

TEST_CASE("fischer_solve: unit-circle reductions") {
    auto check_case = [&](const BiPoly& phi, const BiPoly& g_expect, const BiPoly& h1_expect) {
        FischerOutcome out = fischer_solve(unit_circle, phi);
        REQUIRE(solved(out));
        const auto& d = std::get<FischerDecomposition>(out);
        CHECK(d.g == g_expect);
        CHECK(d.h1 == h1_expect);
        CHECK(d.h2.is_zero());
        CHECK(d.verify());
    };
    check_case(mono(Q, 1, 1), mono(Q, 0, 0), mono(Q, 0, 0));
    check_case(mono(Q, 2, 1), mono(Q, 1, 0), mono(Q, 1, 0));
    check_case(mono(Q, 2, 2), mono(Q, 1, 1) + mono(Q, 0, 0), mono(Q, 0, 0));
}

TEST_CASE("fischer_solve rejects constant divisors") {
    CHECK_THROWS_AS(fischer_solve(mono(Q, 0, 0, 3), mono(Q, 1, 1)), std::invalid_argument);
}

TEST_CASE("fischer_solve: h2(0) = 0 normalization") {
    // phi = zw + 7: h = 7 + ... the constant must land in h1
    BiPoly phi = mono(Q, 1, 1) + mono(Q, 0, 0, 7);
    auto out = fischer_solve(unit_circle, phi);
    REQUIRE(solved(out));
    const auto& d = std::get<FischerDecomposition>(out);
    CHECK(d.h2.coeff(0, 0).is_zero());
    CHECK(d.verify());
}

TEST_CASE("quadratic divisors with no harmonic multiples reduce every monomial up to degree 8") {
    BiPoly ellipse_zw = to_zw(xy({{2, 0, 1, 4}, {0, 2, 1, 1}, {0, 0, -1, 1}}));
    BiPoly circle_qi(QI, VarPair::ZW);
    for (const auto& [e, c] : unit_circle.terms())
        circle_qi.set_coeff(e.n, e.m, Scalar::from_rational(QI, c.rat()));

    for (const BiPoly& f : {circle_qi, ellipse_zw}) {
        CHECK(!harmonic_multiple_search(f, 8).has_value());
        for (int n = 1; n <= 7; ++n) {
            for (int m = 1; n + m <= 8; ++m) {
                BiPoly phi = BiPoly::monomial(Scalar::one(QI), n, m);
                auto out = fischer_solve(f, phi);
                REQUIRE(solved(out));
                const auto& d = std::get<FischerDecomposition>(out);
                CHECK(d.verify());
                // degree bounds from the filtration argument
                CHECK(d.g.total_degree() <= n + m - 2);
                CHECK((d.h1 + d.h2).total_degree() <= n + m);
                // uniqueness: a larger bound returns the same cofactor
                auto out2 = fischer_solve(f, phi, n + m);
                REQUIRE(solved(out2));
                CHECK(std::get<FischerDecomposition>(out2).g == d.g);
            }
        }
    }
}

TEST_CASE("bounded failure carries a rank certificate") {
    // z^2 + w^3 - 5 over Q: reducing zw fails at cofactor degree 4
    BiPoly f = mono(Q, 2, 0) + mono(Q, 0, 3) - mono(Q, 0, 0, 5);
    auto out = fischer_solve(f, mono(Q, 1, 1), 4);
    REQUIRE(!solved(out));
    const auto& bf = std::get<BoundedFailure>(out);
    CHECK(bf.max_cofactor_deg == 4);
    CHECK(bf.rank_augmented > bf.rank);  // certified inconsistent
    CHECK(!bf.unsatisfied.empty());
}

TEST_CASE("dirichlet on the ellipse: frozen oracle value") {
    BiPoly boundary = xy({{2, 0, 1, 4}, {0, 2, 1, 1}, {0, 0, -1, 1}});
    BiPoly data = xy({{2, 0, 1, 1}});

    // oracle: u = c1 + c2 (x^2 - y^2) with u - x^2 = -(4/5) * boundary,
    // solved by undetermined coefficients: c1 = c2 = 4/5
    BiPoly expected = xy({{0, 0, 4, 5}, {2, 0, 4, 5}, {0, 2, -4, 5}});
    BiPoly residual_expect = boundary * Scalar::from_rational(Q, Rational(-4, 5));
    REQUIRE(expected - data == residual_expect);  // oracle self-check by exact expansion

    BiPoly u = dirichlet_ellipse(boundary, data);
    CHECK(u == expected);
    CHECK(laplacian_xy(u).is_zero());
}

TEST_CASE("dirichlet on the unit circle") {
    BiPoly boundary = xy({{2, 0, 1, 1}, {0, 2, 1, 1}, {0, 0, -1, 1}});

    // constant boundary data: x^2 + y^2 restricted to the circle is 1
    BiPoly u0 = dirichlet_ellipse(boundary, xy({{2, 0, 1, 1}, {0, 2, 1, 1}}));
    CHECK(u0 == xy({{0, 0, 1, 1}}));

    // cubic data: verified by exact division and the Laplacian oracle
    BiPoly data = xy({{3, 0, 1, 1}});
    BiPoly u = dirichlet_ellipse(boundary, data);
    CHECK(laplacian_xy(u).is_zero());
    BiPoly q = exact_divide(u - data, boundary);
    CHECK(q * boundary == u - data);
}

TEST_CASE("dirichlet rejects non-elliptic boundaries") {
    CHECK_THROWS_AS(dirichlet_ellipse(xy({{1, 1, 1, 1}, {0, 0, -1, 1}}), xy({{2, 0, 1, 1}})),
                    std::invalid_argument);  // hyperbola
}

TEST_CASE("quartic expansion: scalar case and independent general oracle") {
    BiPoly one = BiPoly::constant(Scalar::one(Q));
    RPoly scalar_case = quartic_expand(one, one);
    // (r+2) r r (r-2) = r^4 - 4 r^2
    CHECK(scalar_case.coeff(4) == one);
    CHECK(scalar_case.coeff(2) == BiPoly::constant(Scalar::from_int(Q, -4)));
    CHECK(scalar_case.coeff(0).is_zero());
    CHECK(scalar_case.coeff(3).is_zero());
    CHECK(scalar_case.str() == "r^4 - 4*r^2");

    std::mt19937_64 rng(123);
    for (int t = 0; t < 30; ++t) {
        BiPoly F = kslab::testing::random_bipoly(Q, rng, 3, 4);
        BiPoly G = kslab::testing::random_bipoly(Q, rng, 3, 4);
        RPoly got = quartic_expand(F, G);
        // independent route: ((r^2 + F - G)^2 - 4 F r^2), expanded by hand
        RPoly oracle(Q, 4);
        BiPoly d = F - G;
        oracle.coeffs[4] = one;
        oracle.coeffs[2] = d * Scalar::from_int(Q, 2) - F * Scalar::from_int(Q, 4);
        oracle.coeffs[0] = d * d;
        CHECK(got == oracle);
        CHECK(got.even_in_r());
    }
}

TEST_CASE("quartic check reports the middle-coefficient discrepancy") {
    BiPoly one = BiPoly::constant(Scalar::one(Q));
    QuarticCheck qc = quartic_check(one, one);
    CHECK(!qc.matches);
    CHECK(qc.expanded.str() == "r^4 - 4*r^2");
    CHECK(qc.reference.str() == "r^4 - 8*r^2");
    CHECK(qc.difference.str() == "4*r^2");

    // general shape of the difference: 2(F+G) r^2
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        BiPoly F = kslab::testing::random_bipoly(Q, rng, 2, 3);
        BiPoly G = kslab::testing::random_bipoly(Q, rng, 2, 3);
        QuarticCheck c = quartic_check(F, G);
        CHECK(c.difference.coeff(2) == (F + G) * Scalar::from_int(Q, 2));
        CHECK(c.difference.coeff(0).is_zero());
        CHECK(c.difference.coeff(4).is_zero());
    }
}
