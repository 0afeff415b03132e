#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kslab/field.hpp"

using namespace kslab;

namespace {

Scalar random_scalar(const FieldRef& f, std::mt19937_64& rng) {
    switch (f->kind) {
        case FieldKind::Q: {
            long n = static_cast<long>(rng() % 2001) - 1000;
            long d = static_cast<long>(rng() % 50) + 1;
            return Scalar::from_rational(f, Rational(mpz_class(n), mpz_class(d)));
        }
        case FieldKind::QI: {
            long a = static_cast<long>(rng() % 201) - 100;
            long b = static_cast<long>(rng() % 201) - 100;
            return Scalar::from_rational(f, Rational(a)) +
                   Scalar::i(f) * Scalar::from_rational(f, Rational(b));
        }
        case FieldKind::FP: return Scalar::from_fp(f, rng() % f->p);
        case FieldKind::FQ: {
            Scalar::ExtElem e(f->k);
            for (auto& c : e) c = rng() % f->p;
            return Scalar::from_ext(f, std::move(e));
        }
    }
    throw std::logic_error("bad kind");
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
    Scalar a = Scalar::from_rational(field_q(), Rational(1, 2));
    Scalar b = Scalar::from_rational(field_q(), Rational(1, 3));
    CHECK((a + b).rat() == Rational(5, 6));
    CHECK((a * b).rat() == Rational(1, 6));
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(Scalar::zero(field_q()).inv(), std::domain_error);
}

TEST_CASE("rational canonicalization: coprime, positive denominator") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10000; ++t) {
        long n = static_cast<long>(rng() % 20001) - 10000;
        long d = static_cast<long>(rng() % 999) + 1;
        if (rng() & 1) d = -d;
        Rational r{mpz_class(n), mpz_class(d)};
        CHECK(r.den() > 0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
        if (r.is_zero()) {
            CHECK(r.den() == 1);
        } else {
            CHECK(g == 1);
        }
    }
}

TEST_CASE("gaussian conjugation") {
    FieldRef qi = field_qi();
    Scalar z = Scalar::from_int(qi, 2) + Scalar::i(qi) * Scalar::from_int(qi, 3);
    Scalar bar = z.conj();
    CHECK(bar.gauss().re() == Rational(2));
    CHECK(bar.gauss().im() == Rational(-3));
    CHECK((z * bar).gauss() == GaussianRational(Rational(13)));
    // involutive automorphism on random pairs
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        Scalar x = random_scalar(qi, rng), y = random_scalar(qi, rng);
        CHECK(x.conj().conj() == x);
        CHECK((x + y).conj() == x.conj() + y.conj());
        CHECK((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("prime field inverse") {
    FieldRef f7 = field_fp(7);
    CHECK(Scalar::from_fp(f7, 3).inv().fp() == 5);
    CHECK_THROWS_AS(Scalar::zero(f7).inv(), std::domain_error);
}

TEST_CASE("mixed-field operands rejected") {
    Scalar a = Scalar::one(field_q());
    Scalar b = Scalar::one(field_fp(7));
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    Scalar c = Scalar::one(field_fp(5));
    CHECK_THROWS_AS(b * c, std::invalid_argument);
}

TEST_CASE("field axioms on random triples, all four fields") {
    std::mt19937_64 rng(42);
    for (FieldRef f : {field_q(), field_qi(), field_fp(101), field_fq(7, 3)}) {
        for (int t = 0; t < 60; ++t) {
            Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Scalar::zero(f));
            if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one(f));
            CHECK(a * Scalar::one(f) == a);
        }
    }
}

TEST_CASE("find_irreducible: first in order, verified by root scan") {
    // degree-1 case over F_2 is t itself
    CHECK(find_irreducible(2, 1) == FpPoly{0, 1});

    // p=7, k=2: no root among the 7 field elements (quadratic => irreducible)
    FpPoly q = find_irreducible(7, 2);
    REQUIRE(fppoly::deg(q) == 2);
    CHECK(q.back() == 1);
    for (std::uint64_t x = 0; x < 7; ++x) CHECK(fppoly::eval(q, x, 7) != 0);
    // earlier tuples in the fixed order all have a root
    auto encode = [](const FpPoly& f, std::uint64_t p) {
        std::uint64_t code = 0, mult = 1;
        for (int i = 0; i + 1 < static_cast<int>(f.size()); ++i, mult *= p) code += f[i] * mult;
        return code;
    };
    std::uint64_t qcode = encode(q, 7);
    for (std::uint64_t code = 0; code < qcode; ++code) {
        FpPoly cand{code % 7, (code / 7) % 7, 1};
        bool has_root = false;
        for (std::uint64_t x = 0; x < 7 && !has_root; ++x) has_root = fppoly::eval(cand, x, 7) == 0;
        CHECK(has_root);
    }

    // p=5, k=3: cubic with no root in F_5 (degree <= 3 no-root implies irreducible)
    FpPoly c = find_irreducible(5, 3);
    REQUIRE(fppoly::deg(c) == 3);
    for (std::uint64_t x = 0; x < 5; ++x) CHECK(fppoly::eval(c, x, 5) != 0);
}

TEST_CASE("frobenius permutes F_{p^k} and fixes exactly F_p") {
    FieldRef f27 = field_fq(3, 3);
    std::vector<Scalar> all;
    for (std::uint64_t code = 0; code < 27; ++code) {
        Scalar::ExtElem e{code % 3, (code / 3) % 3, (code / 9) % 3};
        all.push_back(Scalar::from_ext(f27, std::move(e)));
    }
    int fixed = 0;
    std::vector<bool> hit(27, false);
    for (std::uint64_t code = 0; code < 27; ++code) {
        Scalar img = all[code].pow(3);
        if (img == all[code]) ++fixed;
        // find index of image (encoding)
        const auto& e = img.ext();
        std::uint64_t idx = e[0] + 3 * e[1] + 9 * e[2];
        CHECK(!hit[idx]);
        hit[idx] = true;
    }
    CHECK(fixed == 3);  // exactly the prime subfield
    // frobenius respects + and *
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        Scalar a = random_scalar(f27, rng), b = random_scalar(f27, rng);
        CHECK((a + b).pow(3) == a.pow(3) + b.pow(3));
        CHECK((a * b).pow(3) == a.pow(3) * b.pow(3));
    }
}

TEST_CASE("embed_subfield: prime subfield, identity, degree-2 into degree-6") {
    FieldRef f49 = field_fq(7, 2);
    FieldRef f7_6 = field_fq(7, 6);

    // constants embed as constants
    Scalar five = Scalar::from_int(f49, 5);
    Scalar emb5 = embed_subfield(five, f7_6);
    CHECK(emb5 == Scalar::from_int(f7_6, 5));

    // identity case
    Scalar g = Scalar::generator(f49);
    CHECK(embed_subfield(g, f49) == g);

    // degree-2 element into F_{7^6}: y^{7^2} = y, y^7 != y  (Frobenius orbit oracle)
    Scalar y = embed_subfield(g, f7_6);
    Scalar y7 = y.pow(7);
    CHECK(y7 != y);
    CHECK(y7.pow(7) == y);

    // d must divide k
    FieldRef f7_4 = field_fq(7, 4);
    FieldRef f7_3 = field_fq(7, 3);
    Scalar h = Scalar::generator(f7_4);
    CHECK_THROWS_AS(embed_subfield(h, f7_3), std::invalid_argument);
}

TEST_CASE("embed_subfield preserves addition and multiplication") {
    FieldRef f25 = field_fq(5, 2);
    FieldRef f5_6 = field_fq(5, 6);
    std::mt19937_64 rng(99);
    for (int t = 0; t < 40; ++t) {
        Scalar a = random_scalar(f25, rng), b = random_scalar(f25, rng);
        CHECK(embed_subfield(a + b, f5_6) == embed_subfield(a, f5_6) + embed_subfield(b, f5_6));
        CHECK(embed_subfield(a * b, f5_6) == embed_subfield(a, f5_6) * embed_subfield(b, f5_6));
    }
}

TEST_CASE("field spec parsing") {
    CHECK(field_from_spec("q")->kind == FieldKind::Q);
    CHECK(field_from_spec("qi")->kind == FieldKind::QI);
    CHECK(field_from_spec("fp:11")->p == 11);
    FieldRef fq = field_from_spec("fq:3^4");
    CHECK(fq->p == 3);
    CHECK(fq->k == 4);
    CHECK_THROWS_AS(field_from_spec("fp:12"), std::invalid_argument);
    CHECK_THROWS_AS(field_from_spec("zz"), std::invalid_argument);
}
