#include "eigenbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace eigenbound {

namespace {

double abs1(const Complex& z) { return std::abs(z.real()) + std::abs(z.imag()); }

std::vector<double> two_norms(const MatrixPolynomial& poly) {
    std::vector<double> norms;
    for (const Matrix& a : poly.coefficients()) norms.push_back(induced_norm(a, NormKind::InducedTwo));
    return norms;
}

double tolerance_from_norms(const std::vector<double>& norms, const Complex& lambda) {
    const double scale = std::max(1.0, std::abs(lambda));
    double acc = 0;
    double power = 1;
    for (double norm : norms) {
        acc += norm * power;
        power *= scale;
    }
    return kCertificationFactor * acc;
}

}  // namespace

bool Spectrum::certified() const {
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        if (!(residuals[i] <= tolerances[i])) return false;
    }
    return converged;
}

double Spectrum::min_modulus() const {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& z : eigenvalues) best = std::min(best, std::abs(z));
    return best;
}

Matrix balance(Matrix a) {
    constexpr double kRadix = 2.0;
    constexpr double kRadixSq = kRadix * kRadix;
    const Eigen::Index n = a.rows();
    bool done = false;
    for (int sweep = 0; !done && sweep < 100; ++sweep) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0;
            double r = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs1(a(j, i));
                r += abs1(a(i, j));
            }
            if (c == 0 || r == 0) continue;
            const double s = c + r;
            double f = 1;
            double g = r / kRadix;
            while (c < g) {
                f *= kRadix;
                c *= kRadixSq;
            }
            g = r * kRadix;
            while (c > g) {
                f /= kRadix;
                c /= kRadixSq;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return a;
}

CompanionForm linearize(const MatrixPolynomial& poly) {
    if (poly.degree() < 1) throw InvalidDegree("linearize needs degree >= 1");
    const Eigen::Index n = poly.dim();
    const int m = poly.degree();
    Matrix lead_inv;
    try {
        lead_inv = inverse(poly.leading());
    } catch (const SingularError&) {
        throw SingularLeading();
    }
    const Eigen::Index size = n * m;
    Matrix c = Matrix::Zero(size, size);
    for (int j = 0; j < m; ++j) {
        c.block(0, j * n, n, n) = -lead_inv * poly[m - 1 - j];
    }
    if (m > 1) c.block(n, 0, size - n, size - n).setIdentity();
    return {size, std::move(c)};
}

double residual(const MatrixPolynomial& poly, const Complex& lambda) {
    const Matrix value = poly.evaluate(lambda);
    Eigen::JacobiSVD<Matrix> svd(value);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double certification_tolerance(const MatrixPolynomial& poly, const Complex& lambda) {
    return tolerance_from_norms(two_norms(poly), lambda);
}

Spectrum eigenvalues(const MatrixPolynomial& poly) {
    const CompanionForm companion = linearize(poly);
    const Eigen::Index size = companion.dimension;

    Eigen::ComplexSchur<Matrix> schur(size);
    schur.setMaxIterations(30 * size * size);
    schur.compute(balance(companion.matrix), /*computeU=*/false);

    Spectrum spectrum;
    spectrum.converged = schur.info() == Eigen::Success;
    const Matrix& t = schur.matrixT();
    const auto norms = two_norms(poly);
    for (Eigen::Index i = 0; i < size; ++i) {
        const Complex lambda = t(i, i);
        spectrum.eigenvalues.push_back(lambda);
        spectrum.residuals.push_back(residual(poly, lambda));
        spectrum.tolerances.push_back(tolerance_from_norms(norms, lambda));
        spectrum.max_modulus = std::max(spectrum.max_modulus, std::abs(lambda));
    }
    if (!spectrum.converged) {
        throw NoConvergence("QR iteration did not converge within 30(nm)^2 steps", std::move(spectrum));
    }
    return spectrum;
}

}  // namespace eigenbound
