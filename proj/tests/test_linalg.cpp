#include <doctest.h>

#include <limits>

#include "eigenbound/linalg.hpp"
#include "test_support.hpp"

using namespace eigenbound;

namespace {

constexpr NormKind kAllNorms[] = {NormKind::InducedOne, NormKind::InducedTwo, NormKind::InducedInf};

double vector_norm(const Vector& v, NormKind kind) {
    switch (kind) {
        case NormKind::InducedOne: return v.lpNorm<1>();
        case NormKind::InducedTwo: return v.norm();
        case NormKind::InducedInf: return v.lpNorm<Eigen::Infinity>();
    }
    return 0;
}

}  // namespace

TEST_CASE("induced norms of identity and zero") {
    for (NormKind kind : kAllNorms) {
        CHECK(induced_norm(testing::identity(3), kind) == doctest::Approx(1.0));
        CHECK(induced_norm(Matrix::Zero(2, 2), kind) == 0.0);
    }
}

TEST_CASE("one-norm of a nilpotent matrix matches a brute-force search") {
    Matrix a(2, 2);
    a << 0, 2, 0, 0;
    // max ||A x||_1 over x on the real unit 1-sphere, sampled on a fine grid.
    double brute = 0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = -1.0 + i / 2000.0;
        for (double sign : {-1.0, 1.0}) {
            Vector x(2);
            x << t, sign * (1.0 - std::abs(t));
            brute = std::max(brute, (a * x).lpNorm<1>());
        }
    }
    CHECK(brute == doctest::Approx(2.0));
    CHECK(induced_norm(a, NormKind::InducedOne) == 2.0);
    CHECK(induced_norm(a, NormKind::InducedInf) == 2.0);
    CHECK(induced_norm(a, NormKind::InducedTwo) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("two-norm handles matrices that annihilate the all-ones vector") {
    Matrix a(2, 2);
    a << 1, -1, 1, -1;
    CHECK(induced_norm(a, NormKind::InducedTwo) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("two-norm agrees with power iteration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = testing::random_matrix(rng, 1 + trial % 5);
        CHECK(induced_norm(a, NormKind::InducedTwo) ==
              doctest::Approx(testing::power_iteration_two_norm(a, rng)).epsilon(1e-9));
    }
}

TEST_CASE("norm axioms on random samples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 1 + trial % 5;
        const Matrix a = testing::random_matrix(rng, n);
        const Matrix b = testing::random_matrix(rng, n);
        const Complex c(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
        for (NormKind kind : kAllNorms) {
            const double na = induced_norm(a, kind);
            const double nb = induced_norm(b, kind);
            CHECK(induced_norm(mat_scale(a, c), kind) == doctest::Approx(std::abs(c) * na).epsilon(1e-12));
            CHECK(induced_norm(Matrix(a + b), kind) <= na + nb + 1e-12);
            CHECK(induced_norm(mat_mul(a, b), kind) <= na * nb + 1e-12);
        }
    }
}

TEST_CASE("induced norm bounds the action on unit vectors") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    const Matrix a = testing::random_matrix(rng, 4);
    for (NormKind kind : kAllNorms) {
        const double norm = induced_norm(a, kind);
        for (int i = 0; i < 100; ++i) {
            Vector u(4);
            for (int k = 0; k < 4; ++k) u(k) = Complex(normal(rng), normal(rng));
            u /= vector_norm(u, kind);
            CHECK(vector_norm(a * u, kind) <= norm * vector_norm(u, kind) + 1e-10);
        }
    }
}

TEST_CASE("inverse examples") {
    CHECK(inverse(testing::identity(3)).isApprox(testing::identity(3)));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 4;
    const Matrix di = inverse(d);
    CHECK(di(0, 0).real() == doctest::Approx(0.5));
    CHECK(di(1, 1).real() == doctest::Approx(0.25));
    CHECK(std::abs(di(0, 1)) == 0.0);

    CHECK_THROWS_AS(inverse(Matrix::Zero(2, 2)), SingularError);

    Matrix rank_one(2, 2);
    rank_one << 1, 2, 2, 4;
    CHECK_THROWS_AS(inverse(rank_one), SingularError);
}

TEST_CASE("inverse round trip on random matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 1 + trial % 6;
        const Matrix a = testing::random_matrix(rng, n);
        const Matrix b = inverse(a);
        const double cond = induced_norm(a, NormKind::InducedInf) * induced_norm(b, NormKind::InducedInf);
        const Matrix err = a * b - testing::identity(n);
        CHECK(induced_norm(err, NormKind::InducedInf) <= 1e-10 * static_cast<double>(n) * std::max(1.0, cond));
    }
}

TEST_CASE("inverse rejects bad input") {
    CHECK_THROWS_AS(inverse(Matrix(2, 3)), DimensionMismatch);
    Matrix bad = testing::identity(2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(inverse(bad), NonFiniteInput);
}

TEST_CASE("inv_norm_recip") {
    for (NormKind kind : kAllNorms) {
        CHECK(inv_norm_recip(testing::identity(2), kind) == doctest::Approx(1.0));
        CHECK(inv_norm_recip(Matrix(2.0 * testing::identity(3)), kind) == doctest::Approx(2.0));
    }
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 4;
    CHECK(inv_norm_recip(d, NormKind::InducedInf) == doctest::Approx(2.0));
    CHECK_THROWS_AS(inv_norm_recip(Matrix::Zero(2, 2), NormKind::InducedOne), SingularError);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = testing::random_matrix(rng, 1 + trial % 4);
        for (NormKind kind : kAllNorms) {
            CHECK(inv_norm_recip(a, kind) * induced_norm(inverse(a), kind) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("matrix arithmetic") {
    std::mt19937_64 rng(1);
    const Matrix a = testing::random_matrix(rng, 3);
    CHECK(mat_mul(testing::identity(3), a) == a);
    CHECK(mat_sub(a, a).isZero(0.0));

    Matrix upper(2, 2), lower(2, 2);
    upper << 0, 1, 0, 0;
    lower << 0, 0, 1, 0;
    Matrix first(2, 2), second(2, 2);
    first << 1, 0, 0, 0;
    second << 0, 0, 0, 1;
    CHECK(mat_mul(upper, lower) == first);
    CHECK(mat_mul(lower, upper) == second);

    CHECK(mat_scale(testing::identity(2), Complex(0, 2)) == Matrix(Complex(0, 2) * testing::identity(2)));
    CHECK_THROWS_AS(mat_mul(Matrix(2, 3), Matrix(2, 3)), DimensionMismatch);
    CHECK_THROWS_AS(mat_sub(Matrix(2, 2), Matrix(3, 3)), DimensionMismatch);
}

TEST_CASE("norm names round trip") {
    for (NormKind kind : kAllNorms) CHECK(parse_norm(to_string(kind)) == kind);
    CHECK_FALSE(parse_norm("3").has_value());
}
