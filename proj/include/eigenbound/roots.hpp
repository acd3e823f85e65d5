#pragma once

#include <span>

namespace eigenbound {

struct RootResult {
    double root = 0;
    double residual = 0;  ///< |f(root)|
    int iterations = 0;
};

/// Residual tolerance factor: |f(root)| <= kRootResidualTol * lead * max(1, root)^degree.
inline constexpr double kRootResidualTol = 1e-12;

/// Unique positive root of  lead z^m - c_{m-1} z^{m-1} - ... - c_1 z - c_0.
///
/// `tail` lists (c_{m-1}, ..., c_0), so m = tail.size(). Every c_j must be
/// nonnegative; the sign pattern has a single change so the positive root is
/// unique, and it lies below 1 + max_j c_j / lead.
///
/// Throws AllZeroTail when every c_j is zero, NonFiniteInput on NaN/Inf or
/// negative entries, and InvalidDegree for an empty tail.
RootResult cauchy_positive_root(double lead, std::span<const double> tail);

/// Root k > 1 of x^d - x^{d-1} - M (bracket [1, 1 + M]; d = 1 gives 1 + M exactly).
RootResult trinomial_positive_root(int d, double m);

/// Bisection to bracket width <= 1e-8 followed by Newton polish, falling
/// back to bisection whenever a Newton step leaves the bracket.
///
/// `f` must be increasing across the single root in [lo, hi] with
/// f(lo) <= 0 <= f(hi). `fdf` returns (f(x), f'(x)); `tol(x)` gives the
/// absolute residual target at x.
template <typename Fdf, typename Tol>
RootResult bracketed_root(Fdf&& fdf, double lo, double hi, Tol&& tol);

}  // namespace eigenbound

#include "eigenbound/roots_impl.hpp"
