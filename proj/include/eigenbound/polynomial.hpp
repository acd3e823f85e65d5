#pragma once

#include <span>
#include <vector>

#include "eigenbound/linalg.hpp"

namespace eigenbound {

/// P(z) = A_0 + A_1 z + ... + A_m z^m with n x n complex coefficients.
///
/// Coefficients are stored lowest degree first and never mutated after
/// construction. The leading coefficient is nonzero; it may still be
/// singular, which the bound and oracle routines report themselves.
class MatrixPolynomial {
public:
    /// Throws DimensionMismatch for non-square or mixed-size coefficients,
    /// NonFiniteInput for NaN/Inf entries and InvalidDegree when the list is
    /// empty or A_m is the zero matrix.
    explicit MatrixPolynomial(std::vector<Matrix> coefficients);

    /// Scalar polynomial a_0 + a_1 z + ... as a 1x1 matrix polynomial.
    static MatrixPolynomial scalar(std::span<const Complex> coefficients);

    Eigen::Index dim() const { return coeffs_.front().rows(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// A_j for 0 <= j <= m; the zero matrix for j = -1 and j > m.
    Matrix coefficient(int j) const;
    const Matrix& operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
    const Matrix& leading() const { return coeffs_.back(); }
    std::span<const Matrix> coefficients() const { return coeffs_; }

    Matrix evaluate(const Complex& z) const;

    /// c * P(z), every coefficient multiplied by c.
    MatrixPolynomial scaled(const Complex& c) const;

    bool operator==(const MatrixPolynomial& other) const;

private:
    std::vector<Matrix> coeffs_;
};

}  // namespace eigenbound
