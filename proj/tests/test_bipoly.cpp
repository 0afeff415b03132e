#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/bipoly.hpp"
#include "test_support.hpp"

using namespace kslab;
using kslab::testing::mono;
using kslab::testing::nonzero_random_bipoly;

namespace {

const FieldRef Q = field_q();
const FieldRef QI = field_qi();

BiPoly parse_simple_xy(std::initializer_list<std::tuple<int, int, long, long>> terms) {
    // (n, m, num, den) over Q in x,y
    BiPoly p(Q, VarPair::XY);
    for (auto [n, m, num, den] : terms)
        p.add_term(n, m, Scalar::from_rational(Q, Rational(mpz_class(num), mpz_class(den))));
    return p;
}

}  // namespace

TEST_CASE("ring ops: product and exact division") {
    BiPoly zpw = mono(Q, 1, 0) + mono(Q, 0, 1);   // z + w
    BiPoly zmw = mono(Q, 1, 0) - mono(Q, 0, 1);   // z - w
    CHECK(zpw * zmw == mono(Q, 2, 0) - mono(Q, 0, 2));

    BiPoly num = mono(Q, 2, 2) - mono(Q, 0, 0);   // z^2 w^2 - 1
    BiPoly den = mono(Q, 1, 1) - mono(Q, 0, 0);   // zw - 1
    CHECK(exact_divide(num, den) == mono(Q, 1, 1) + mono(Q, 0, 0));
    // round trip on the product
    CHECK(exact_divide(num * zpw, zpw) == num);
}

TEST_CASE("exact division failure carries the remainder witness") {
    // long division of zw by z+1 in z: quotient w, remainder -w
    BiPoly p = mono(Q, 1, 1);
    BiPoly q = mono(Q, 1, 0) + mono(Q, 0, 0);
    try {
        exact_divide(p, q);
        FAIL("expected ExactDivisionError");
    } catch (const ExactDivisionError& e) {
        CHECK(e.remainder() == -mono(Q, 0, 1));
        // the witness reconstructs the division identity
        auto [quot, rem] = divide_with_remainder(p, q);
        CHECK(quot * q + rem == p);
    }
}

TEST_CASE("degree-lowering operator") {
    CHECK(fischer_D(mono(Q, 2, 3)) == mono(Q, 1, 2));
    CHECK(fischer_D(mono(Q, 5, 0)).is_zero());
    BiPoly p = mono(Q, 1, 1, 2) + mono(Q, 1, 0);  // 2zw + z
    CHECK(fischer_D(p) == BiPoly::constant(Scalar::from_int(Q, 2)));
}

TEST_CASE("mixed part and harmonicity") {
    BiPoly p = mono(Q, 2, 0) + mono(Q, 1, 1, 3) + mono(Q, 0, 1);  // z^2 + 3zw + w
    CHECK(mixed_part(p) == mono(Q, 1, 1, 3));
    CHECK(is_harmonic(mono(Q, 3, 0) + mono(Q, 0, 2) - mono(Q, 0, 0, 5)));
    CHECK(!is_harmonic(mono(Q, 1, 1)));
}

TEST_CASE("kernel of the lowering operator is exactly the harmonic polynomials") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        BiPoly p = kslab::testing::random_bipoly(t % 2 ? Q : QI, rng, 6, 8);
        CHECK(fischer_D(p).is_zero() == mixed_part(p).is_zero());
    }
}

TEST_CASE("hermitian reflection") {
    Scalar one_plus_i = Scalar::from_int(QI, 1) + Scalar::i(QI);
    Scalar one_minus_i = Scalar::from_int(QI, 1) - Scalar::i(QI);
    BiPoly p = BiPoly::monomial(one_plus_i, 2, 1) + mono(QI, 0, 2, 3);
    BiPoly expected = BiPoly::monomial(one_minus_i, 1, 2) + mono(QI, 2, 0, 3);
    CHECK(hermitian_reflect(p) == expected);

    BiPoly self = mono(QI, 1, 1) - mono(QI, 0, 0);
    CHECK(hermitian_reflect(self) == self);

    CHECK_THROWS_AS(hermitian_reflect(mono(field_fp(7), 1, 0)), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        BiPoly a = kslab::testing::random_bipoly(QI, rng, 4, 5);
        BiPoly b = kslab::testing::random_bipoly(QI, rng, 4, 5);
        CHECK(hermitian_reflect(hermitian_reflect(a)) == a);
        CHECK(hermitian_reflect(a * b) == hermitian_reflect(a) * hermitian_reflect(b));
        CHECK(hermitian_reflect(a + b) == hermitian_reflect(a) + hermitian_reflect(b));
    }
}

TEST_CASE("gcd: planted factors") {
    BiPoly f = mono(Q, 1, 1) - mono(Q, 0, 0);  // zw - 1
    BiPoly g = (f * (mono(Q, 1, 0) + mono(Q, 0, 1)));
    CHECK(gcd(f, g) == f);
    CHECK(gcd(mono(Q, 2, 0) - mono(Q, 0, 2), mono(Q, 1, 0) - mono(Q, 0, 1)) ==
          mono(Q, 1, 0) - mono(Q, 0, 1));
}

TEST_CASE("gcd: coprime pair, resultant oracle") {
    BiPoly a = mono(Q, 1, 1) - mono(Q, 0, 0);  // zw - 1 = (z)w + (-1)
    BiPoly b = mono(Q, 1, 0) + mono(Q, 0, 1);  // z + w  = (1)w + (z)
    // both have w-degree 1; Res_w(pw+q, rw+s) = p*s - q*r, computed directly
    BiPoly res = a.coeff_of_w(1) * b.coeff_of_w(0) - a.coeff_of_w(0) * b.coeff_of_w(1);
    CHECK(res == mono(Q, 2, 0) + mono(Q, 0, 0));  // z^2 + 1, nonzero => coprime
    CHECK(gcd(a, b) == BiPoly::constant(Scalar::one(Q)));
}

TEST_CASE("gcd contract on random triples") {
    std::mt19937_64 rng(31);
    for (FieldRef f : {Q, QI, field_fp(13)}) {
        for (int t = 0; t < 25; ++t) {
            BiPoly p = nonzero_random_bipoly(f, rng, 3, 3);
            BiPoly q = nonzero_random_bipoly(f, rng, 3, 3);
            BiPoly r = nonzero_random_bipoly(f, rng, 2, 2);
            BiPoly g = gcd(p, q);
            CHECK(exact_divide(p, g) * g == p);
            CHECK(exact_divide(q, g) * g == q);
            // gcd(pr, qr) = gcd(p, q) * r up to unit normalization
            CHECK(gcd(p * r, q * r) == (g * r).unit_normalized());
        }
    }
}

TEST_CASE("separable rank") {
    BiPoly zp1 = mono(Q, 1, 0) + mono(Q, 0, 0);
    BiPoly wp1 = mono(Q, 0, 1) + mono(Q, 0, 0);
    CHECK(separable_rank(zp1 * wp1) == 1);
    CHECK(separable_rank(mono(Q, 1, 1) + mono(Q, 0, 0)) == 2);
    CHECK(separable_rank(mono(Q, 4, 4) - mono(Q, 0, 0)) == 2);
    CHECK(separable_rank(BiPoly::zero(Q)) == 0);
}

TEST_CASE("separable rank bounded by construction rank") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        std::size_t r = 1 + rng() % 3;
        BiPoly sum(Q, VarPair::ZW);
        for (std::size_t i = 0; i < r; ++i) {
            // a_i(z) * b_i(w)
            BiPoly az(Q, VarPair::ZW), bw(Q, VarPair::ZW);
            for (int d = 0; d <= 3; ++d) {
                az.add_term(d, 0, kslab::testing::random_scalar(Q, rng, 5));
                bw.add_term(0, d, kslab::testing::random_scalar(Q, rng, 5));
            }
            sum += az * bw;
        }
        CHECK(separable_rank(sum) <= r);
    }
}

TEST_CASE("real-form conversions") {
    BiPoly x2y2 = parse_simple_xy({{2, 0, 1, 1}, {0, 2, 1, 1}});  // x^2 + y^2
    BiPoly zw = to_zw(x2y2);
    CHECK(zw == BiPoly::monomial(Scalar::one(QI), 1, 1));

    BiPoly f = mono(QI, 1, 1) - mono(QI, 0, 0);  // zw - 1
    BiPoly circle = to_xy(f);
    CHECK(circle == parse_simple_xy({{2, 0, 1, 1}, {0, 2, 1, 1}, {0, 0, -1, 1}}));

    BiPoly ellipse = parse_simple_xy({{2, 0, 1, 4}, {0, 2, 1, 1}, {0, 0, -1, 1}});
    CHECK(to_xy(to_zw(ellipse)) == ellipse);

    // non-symmetric input is rejected
    CHECK_THROWS_AS(to_xy(mono(QI, 1, 0)        // z alone is not real-valued on w = conj z
                          + mono(QI, 2, 1)),
                    std::invalid_argument);
}

TEST_CASE("conversions are mutually inverse on conjugate-symmetric inputs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        // build a conjugate-symmetric polynomial: s + reflect(s)
        BiPoly s = kslab::testing::random_bipoly(QI, rng, 4, 5);
        BiPoly sym = s + hermitian_reflect(s);
        REQUIRE(is_conjugate_symmetric(sym));
        CHECK(to_zw(to_xy(sym)) == sym);

        BiPoly pxy = kslab::testing::random_bipoly(Q, rng, 4, 5, VarPair::XY);
        CHECK(to_xy(to_zw(pxy)) == pxy);
    }
}

TEST_CASE("conic classification") {
    CHECK(classify_conic(parse_simple_xy({{2, 0, 1, 1}, {0, 2, 1, 1}, {0, 0, -1, 1}})) ==
          ConicClass::Circle);
    CHECK(classify_conic(parse_simple_xy({{2, 0, 1, 4}, {0, 2, 1, 1}, {0, 0, -1, 1}})) ==
          ConicClass::Ellipse);
    CHECK(classify_conic(parse_simple_xy({{1, 1, 1, 1}, {0, 0, -1, 1}})) == ConicClass::Hyperbola);
    CHECK(classify_conic(parse_simple_xy({{2, 0, 1, 1}, {0, 1, -1, 1}})) == ConicClass::Parabola);
    CHECK(classify_conic(parse_simple_xy({{1, 0, 2, 1}, {0, 1, 3, 1}, {0, 0, 1, 1}})) ==
          ConicClass::Line);
    CHECK(classify_conic(parse_simple_xy({{2, 0, 1, 1}, {0, 2, -1, 1}})) ==
          ConicClass::LinePairDegenerate);  // x^2 - y^2
    CHECK(classify_conic(parse_simple_xy({{2, 0, 1, 1}, {0, 2, 1, 1}})) == ConicClass::PointOrEmpty);
    CHECK(classify_conic(parse_simple_xy({{2, 0, 1, 1}, {0, 2, 1, 1}, {0, 0, 1, 1}})) ==
          ConicClass::PointOrEmpty);  // empty real locus
    CHECK(classify_conic(parse_simple_xy({{3, 0, 1, 1}})) == ConicClass::NotAConic);
    CHECK_THROWS_AS(classify_conic(BiPoly::zero(Q, VarPair::XY)), std::invalid_argument);
    CHECK_THROWS_AS(classify_conic(BiPoly::monomial(Scalar::one(field_fp(7)), 2, 0, VarPair::XY)),
                    std::invalid_argument);
}

TEST_CASE("canonical text form") {
    BiPoly f = mono(Q, 1, 1) - mono(Q, 0, 0);
    CHECK(f.str() == "z*w - 1");
    BiPoly g = mono(Q, 2, 0) + mono(Q, 0, 1, -3);
    CHECK(g.str() == "z^2 - 3*w");
    Scalar one_plus_i = Scalar::from_int(QI, 1) + Scalar::i(QI);
    BiPoly h = BiPoly::monomial(one_plus_i, 2, 1) + mono(QI, 0, 2, 3);
    CHECK(h.str() == "(1+i)*z^2*w + 3*w^2");
    CHECK(BiPoly::zero(Q).str() == "0");
    BiPoly ell = parse_simple_xy({{2, 0, 1, 4}, {0, 2, 1, 1}, {0, 0, -1, 1}});
    CHECK(ell.str() == "1/4*x^2 + y^2 - 1");
}

TEST_CASE("variable families may not mix") {
    BiPoly zw = mono(Q, 1, 0);
    BiPoly xy(Q, VarPair::XY);
    xy.set_coeff(1, 0, Scalar::one(Q));
    CHECK_THROWS_AS(zw + xy, std::invalid_argument);
}
