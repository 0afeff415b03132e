#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/exactla.hpp"
#include "test_support.hpp"

using namespace kslab;
using kslab::testing::random_scalar;

namespace {

ExactMatrix random_matrix(const FieldRef& f, std::mt19937_64& rng, std::size_t rows,
                          std::size_t cols) {
    ExactMatrix m(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() % 3) m.at(i, j) = random_scalar(f, rng, 9);
    return m;
}

std::vector<Scalar> mat_apply(const ExactMatrix& m, const std::vector<Scalar>& x) {
    std::vector<Scalar> y(m.rows(), Scalar::zero(m.field()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m.at(i, j) * x[j];
    return y;
}

}  // namespace

TEST_CASE("rank, nullspace, solve basics") {
    FieldRef Q = field_q();
    ExactMatrix eye(2, 2, Q);
    eye.at(0, 0) = eye.at(1, 1) = Scalar::one(Q);
    CHECK(rank(eye) == 2);

    ExactMatrix row(1, 2, Q);
    row.at(0, 0) = row.at(0, 1) = Scalar::one(Q);
    auto ns = nullspace(row);
    REQUIRE(ns.size() == 1);
    // (1, -1) up to scale
    CHECK(ns[0][0] * Scalar::from_int(Q, -1) == ns[0][1]);

    ExactMatrix two(1, 1, Q);
    two.at(0, 0) = Scalar::from_int(Q, 2);
    auto x = solve(two, {Scalar::from_int(Q, 3)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar::from_rational(Q, Rational(3, 2)));

    // inconsistent system
    ExactMatrix zero(1, 1, Q);
    CHECK(!solve(zero, {Scalar::one(Q)}).has_value());
    auto ranks = solve_ranks(zero, {Scalar::one(Q)});
    CHECK(ranks.rank_augmented > ranks.rank_coeff);
}

TEST_CASE("rank/nullity/solve properties on random matrices over Q and F_p") {
    std::mt19937_64 rng(2024);
    for (FieldRef f : {field_q(), field_fp(97)}) {
        for (int t = 0; t < 50; ++t) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
            ExactMatrix m = random_matrix(f, rng, rows, cols);

            std::size_t r = rank(m);
            auto ns = nullspace(m);
            CHECK(r + ns.size() == cols);
            CHECK(rank(m.transpose()) == r);

            for (const auto& v : ns) {
                auto y = mat_apply(m, v);
                for (const auto& c : y) CHECK(c.is_zero());
            }

            // a consistent right-hand side: b = M x0
            std::vector<Scalar> x0;
            for (std::size_t j = 0; j < cols; ++j) x0.push_back(random_scalar(f, rng, 9));
            auto b = mat_apply(m, x0);
            auto x = solve(m, b);
            REQUIRE(x.has_value());
            auto back = mat_apply(m, *x);
            for (std::size_t i = 0; i < rows; ++i) CHECK(back[i] == b[i]);
        }
    }
}

TEST_CASE("monomial basis indexing") {
    auto b1 = monomial_basis(1, MonomialFilter::All);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0] == Exponent{0, 0});
    CHECK(b1[1] == Exponent{1, 0});
    CHECK(b1[2] == Exponent{0, 1});

    auto b2 = monomial_basis(2, MonomialFilter::MixedOnly);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0] == Exponent{1, 1});

    for (int d = 0; d <= 8; ++d)
        CHECK(monomial_basis(d, MonomialFilter::All).size() ==
              static_cast<std::size_t>((d + 1) * (d + 2) / 2));
}
