#include "eigenbound/polynomial.hpp"

#include <string>

namespace eigenbound {

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw InvalidDegree("matrix polynomial needs at least one coefficient");
    const Eigen::Index n = coeffs_.front().rows();
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        const Matrix& a = coeffs_[j];
        if (a.rows() != n || a.cols() != n || n == 0) {
            throw DimensionMismatch("coefficient A_" + std::to_string(j) + " is " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    ", expected " + std::to_string(n) + "x" + std::to_string(n));
        }
        detail::require_finite(a, "matrix polynomial coefficient");
    }
    if (coeffs_.back().isZero(0.0)) throw InvalidDegree("leading coefficient A_m is the zero matrix");
}

MatrixPolynomial MatrixPolynomial::scalar(std::span<const Complex> coefficients) {
    std::vector<Matrix> coeffs;
    coeffs.reserve(coefficients.size());
    for (const Complex& c : coefficients) coeffs.push_back(Matrix::Constant(1, 1, c));
    return MatrixPolynomial(std::move(coeffs));
}

Matrix MatrixPolynomial::coefficient(int j) const {
    if (j < 0 || j > degree()) return Matrix::Zero(dim(), dim());
    return coeffs_[static_cast<std::size_t>(j)];
}

Matrix MatrixPolynomial::evaluate(const Complex& z) const {
    Matrix acc = coeffs_.back();
    for (int j = degree() - 1; j >= 0; --j) acc = acc * z + coeffs_[static_cast<std::size_t>(j)];
    return acc;
}

MatrixPolynomial MatrixPolynomial::scaled(const Complex& c) const {
    std::vector<Matrix> coeffs;
    coeffs.reserve(coeffs_.size());
    for (const Matrix& a : coeffs_) coeffs.push_back(mat_scale(a, c));
    return MatrixPolynomial(std::move(coeffs));
}

bool MatrixPolynomial::operator==(const MatrixPolynomial& other) const {
    if (coeffs_.size() != other.coeffs_.size() || dim() != other.dim()) return false;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] != other.coeffs_[j]) return false;
    }
    return true;
}

}  // namespace eigenbound
