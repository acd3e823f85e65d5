#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "eigenbound/errors.hpp"

namespace eigenbound {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Subordinate matrix norm selector.
enum class NormKind { InducedOne, InducedTwo, InducedInf };

inline constexpr double kPivotEpsilon = 1e-13;

std::string_view to_string(NormKind kind);
/// Accepts "1", "2", "inf" (and "one", "two", "infinity").
std::optional<NormKind> parse_norm(std::string_view text);

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw DimensionMismatch(std::string(what) + ": expected a non-empty square matrix, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
    if (!a.allFinite()) {
        throw NonFiniteInput(std::string(what) + ": matrix has non-finite entries");
    }
}

}  // namespace detail

/// Induced matrix norm: max column sum, largest singular value, or max row sum.
template <typename Derived>
typename Derived::RealScalar induced_norm(const Eigen::MatrixBase<Derived>& a, NormKind kind) {
    using Real = typename Derived::RealScalar;
    if (a.size() == 0) return Real(0);
    switch (kind) {
        case NormKind::InducedOne:
            return a.cwiseAbs().colwise().sum().maxCoeff();
        case NormKind::InducedInf:
            return a.cwiseAbs().rowwise().sum().maxCoeff();
        case NormKind::InducedTwo: {
            using Plain = typename Derived::PlainObject;
            Eigen::JacobiSVD<Plain> svd(a.eval());
            return svd.singularValues()(0);
        }
    }
    return Real(0);
}

/// Inverse by partially pivoted LU.
///
/// Throws SingularError when some pivot |u_ii| falls below
/// kPivotEpsilon * ||A||_inf, which is how the library detects that the
/// nonsingularity hypothesis on A_m (or A_0) fails.
template <typename Derived>
typename Derived::PlainObject inverse(const Eigen::MatrixBase<Derived>& a) {
    detail::require_square(a, "inverse");
    detail::require_finite(a, "inverse");
    const auto scale = induced_norm(a, NormKind::InducedInf);
    Eigen::PartialPivLU<typename Derived::PlainObject> lu(a.eval());
    const auto& packed = lu.matrixLU();
    for (Eigen::Index i = 0; i < packed.rows(); ++i) {
        if (!(std::abs(packed(i, i)) >= kPivotEpsilon * scale) || scale == 0) {
            throw SingularError("matrix is singular to working precision (pivot " +
                                std::to_string(i) + ")");
        }
    }
    return lu.inverse();
}

/// 1 / ||A^{-1}||, the lower bound ||A u|| >= ||A^{-1}||^{-1} ||u||.
template <typename Derived>
typename Derived::RealScalar inv_norm_recip(const Eigen::MatrixBase<Derived>& a, NormKind kind) {
    return 1 / induced_norm(inverse(a), kind);
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject mat_mul(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    return a * b;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject mat_sub(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("mat_sub: shapes differ");
    }
    return a - b;
}

template <typename Derived>
typename Derived::PlainObject mat_scale(const Eigen::MatrixBase<Derived>& a,
                                        const typename Derived::Scalar& c) {
    return c * a;
}

}  // namespace eigenbound
