#pragma once

#include <vector>

#include "eigenbound/errors.hpp"
#include "eigenbound/linalg.hpp"
#include "eigenbound/polynomial.hpp"

namespace eigenbound {

/// Block companion matrix of A_m^{-1} P(z).
///
///     [ -B_{m-1} -B_{m-2} ... -B_0 ]
///     [    I        0     ...   0  ]      B_j = A_m^{-1} A_j
///     [           ...              ]
///     [    0       ...    I     0  ]
struct CompanionForm {
    Eigen::Index dimension = 0;
    Matrix matrix;
};

/// Eigenvalues of P with a smallest-singular-value certificate for each.
struct Spectrum {
    std::vector<Complex> eigenvalues;
    std::vector<double> residuals;   ///< sigma_min(P(lambda))
    std::vector<double> tolerances;  ///< certification threshold per eigenvalue
    double max_modulus = 0;
    bool converged = true;

    bool certified() const;
    double min_modulus() const;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, Spectrum partial) : Error(what), partial_(std::move(partial)) {}
    const Spectrum& partial() const { return partial_; }

private:
    Spectrum partial_;
};

/// Relative factor of the residual certificate.
inline constexpr double kCertificationFactor = 1e-6;

/// Throws SingularLeading when A_m fails the pivot test.
CompanionForm linearize(const MatrixPolynomial& poly);

/// All n*m eigenvalues: balancing, Hessenberg reduction and shifted QR on
/// the companion matrix, then residual certification against P itself.
///
/// Throws NoConvergence (carrying what was computed) when the QR sweep
/// exceeds 30 (nm)^2 iterations.
Spectrum eigenvalues(const MatrixPolynomial& poly);

/// sigma_min(P(lambda)); zero exactly at an eigenvalue.
double residual(const MatrixPolynomial& poly, const Complex& lambda);

/// 1e-6 * sum_j ||A_j||_2 max(1, |lambda|)^j.
double certification_tolerance(const MatrixPolynomial& poly, const Complex& lambda);

/// Diagonal similarity by powers of two that equalizes row and column norms.
Matrix balance(Matrix a);

}  // namespace eigenbound
