#include <doctest.h>

#include <cmath>
#include <random>

#include "eigenbound/oracle.hpp"
#include "test_support.hpp"

using namespace eigenbound;

namespace {

std::vector<Complex> sorted(std::vector<Complex> z) {
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return z;
}

}  // namespace

TEST_CASE("linearization layout") {
    Matrix a0(2, 2), a1(2, 2);
    a0 << 1, 2, 3, 4;
    a1 << 5, 6, 7, 8;
    const MatrixPolynomial linear({a0, Matrix(2.0 * testing::identity(2))});
    const auto c1 = linearize(linear);
    CHECK(c1.dimension == 2);
    CHECK(c1.matrix.isApprox(Matrix(-0.5 * a0)));

    const MatrixPolynomial quad({a0, a1, testing::identity(2)});
    const auto c2 = linearize(quad);
    REQUIRE(c2.dimension == 4);
    CHECK(c2.matrix.block(0, 0, 2, 2) == Matrix(-a1));
    CHECK(c2.matrix.block(0, 2, 2, 2) == Matrix(-a0));
    CHECK(c2.matrix.block(2, 0, 2, 2) == testing::identity(2));
    CHECK(c2.matrix.block(2, 2, 2, 2).isZero(0.0));

    Matrix singular = testing::identity(2);
    singular(0, 0) = 0;
    CHECK_THROWS_AS(linearize(MatrixPolynomial({a0, singular})), SingularLeading);
}

TEST_CASE("eigenvalue examples") {
    const MatrixPolynomial shift({Matrix(-2.0 * testing::identity(3)), testing::identity(3)});
    const auto s = eigenvalues(shift);
    REQUIRE(s.eigenvalues.size() == 3);
    for (const Complex& z : s.eigenvalues) CHECK(std::abs(z - 2.0) < 1e-12);
    CHECK(s.certified());

    // z^2 + z + 1 repeated twice: primitive cube roots of unity, modulus 1.
    const auto id = testing::identity(2);
    const auto quad = eigenvalues(MatrixPolynomial({id, id, id}));
    REQUIRE(quad.eigenvalues.size() == 4);
    for (const Complex& z : quad.eigenvalues) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    CHECK(quad.max_modulus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quad.certified());

    // Nilpotent A_0 contributes an exact zero eigenvalue.
    Matrix nil(2, 2);
    nil << 0, 1, 0, 0;
    const auto zero = eigenvalues(MatrixPolynomial({nil, id}));
    CHECK(zero.min_modulus() < 1e-12);
    CHECK(zero.max_modulus < 1e-12);
}

TEST_CASE("diagonal families split into scalar polynomials") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        const int m = 1 + trial % 5;
        std::vector<std::vector<Complex>> scalars;
        for (Eigen::Index i = 0; i < n; ++i) scalars.push_back(testing::random_scalars(rng, m));
        std::vector<Matrix> coeffs;
        for (int j = 0; j <= m; ++j) {
            Matrix d = Matrix::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i) d(i, i) = scalars[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            coeffs.push_back(d);
        }
        const auto spectrum = eigenvalues(MatrixPolynomial(coeffs));
        std::vector<Complex> expected;
        for (const auto& a : scalars) {
            for (const Complex& z : testing::durand_kerner(a)) expected.push_back(z);
        }
        REQUIRE(spectrum.eigenvalues.size() == expected.size());
        CHECK(testing::matching_distance(spectrum.eigenvalues, expected) < 1e-7);
        CHECK(spectrum.certified());
    }
}

TEST_CASE("random spectra are certified and real coefficients give conjugate pairs") {
    std::mt19937_64 rng(32);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        const int m = 1 + trial % 5;
        std::vector<Matrix> coeffs;
        for (int j = 0; j <= m; ++j) {
            Matrix a(n, n);
            for (Eigen::Index i = 0; i < n * n; ++i) a(i) = normal(rng);
            coeffs.push_back(a);
        }
        const MatrixPolynomial poly(coeffs);
        const auto spectrum = eigenvalues(poly);
        CHECK(spectrum.eigenvalues.size() == static_cast<std::size_t>(n * m));
        CHECK(spectrum.certified());

        std::vector<Complex> conj;
        for (const Complex& z : spectrum.eigenvalues) conj.push_back(std::conj(z));
        CHECK(testing::matching_distance(sorted(spectrum.eigenvalues), conj) < 1e-6 * std::max(1.0, spectrum.max_modulus));

        const auto complex_spectrum = eigenvalues(testing::random_polynomial(rng, n, m));
        CHECK(complex_spectrum.certified());
    }
}

TEST_CASE("residual and certification tolerance") {
    const auto id = testing::identity(2);
    const MatrixPolynomial poly({Matrix(-2.0 * id), id});
    CHECK(residual(poly, Complex(2.0)) == doctest::Approx(0.0));
    CHECK(residual(poly, Complex(3.0)) == doctest::Approx(1.0));
    CHECK(residual(poly, Complex(0, 1)) == doctest::Approx(std::sqrt(5.0)));
    CHECK(certification_tolerance(poly, Complex(0.5)) == doctest::Approx(3e-6));
    CHECK(certification_tolerance(poly, Complex(4.0)) == doctest::Approx(1e-6 * (2 + 4)));
}

TEST_CASE("balancing is a power-of-two diagonal similarity") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + trial % 5;
        Matrix a = testing::random_matrix(rng, n);
        // Badly scaled: D A D^{-1} with wild D.
        for (Eigen::Index i = 0; i < n; ++i) {
            const double s = std::pow(2.0, 10 * static_cast<double>(i) - 20);
            a.row(i) *= s;
            a.col(i) /= s;
        }
        const Matrix b = balance(a);
        CHECK(b.diagonal() == a.diagonal());
        CHECK(b.norm() <= a.norm());
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (a(i, j) == Complex(0)) continue;
                const double ratio = std::log2(std::abs(b(i, j)) / std::abs(a(i, j)));
                CHECK(std::abs(ratio - std::round(ratio)) < 1e-12);
            }
        }
    }
}
