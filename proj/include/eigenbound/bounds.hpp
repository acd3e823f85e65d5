#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigenbound/linalg.hpp"
#include "eigenbound/polynomial.hpp"

namespace eigenbound {

enum class Theorem { A, B, C, T1, T2, T3, T4, Mohammad, Montel };

/// How Theorems 1 and 4 treat the commutator A_{m-1}A_m - A_m A_{m-1}.
///
/// AsStated drops it, which is what the printed radius formulas assume.
/// CommutatorCorrected keeps it as a separate 1/|z| term in the estimate of
/// (A_{m-1} - A_m z) P(z); the radius then solves
///     c0 / R + (rest of the estimate at R) = 1
/// and collapses to the printed formula when the commutator vanishes.
enum class Variant { AsStated, CommutatorCorrected };

std::string_view to_string(Theorem theorem);
std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view text);

/// Conjugate exponents 1/p + 1/q = 1 with p in (1, inf].
struct HolderPair {
    double p = 2;
    double q = 2;

    /// Throws InvalidHolder unless p > 1 (p may be +inf, giving q = 1).
    static HolderPair from_p(double p);
    static HolderPair infinite() { return from_p(std::numeric_limits<double>::infinity()); }
    bool is_infinite() const { return p == std::numeric_limits<double>::infinity(); }
};

/// A disk |z| < radius (strict) or |z| <= radius centered at the origin,
/// with the quantities that produced it.
struct EigenvalueBound {
    double radius = 0;
    bool strict = true;
    Theorem theorem = Theorem::C;
    NormKind norm = NormKind::InducedInf;
    std::optional<HolderPair> holder;
    std::optional<Variant> variant;
    std::map<std::string, double> detail;

    /// Short display name, e.g. "T2(p=4)" or "T1[corrected](p=2)".
    std::string label() const;
};

/// A_{m-1} A_{m-r} - A_m A_{m-r-1}: coefficient of z^{m-r} in (A_{m-1} - A_m z) P(z).
struct CoefficientProductTerm {
    int r = 0;
    Matrix value;
};

/// Terms for r = 0..m. r = 0 is the commutator; r = m uses A_{-1} = 0.
std::vector<CoefficientProductTerm> product_terms(const MatrixPolynomial& poly);

/// Cauchy radius: positive root of ||A_m^{-1}||^{-1} z^m - sum_j ||A_j|| z^j.
EigenvalueBound bound_theorem_b(const MatrixPolynomial& poly, NormKind kind);

/// 1 + ||A_m^{-1}|| max_{j<m} ||A_j||.
EigenvalueBound bound_theorem_c(const MatrixPolynomial& poly, NormKind kind);

/// Hoelder bound built from the product terms, for finite p only.
EigenvalueBound bound_theorem_1(const MatrixPolynomial& poly, NormKind kind, HolderPair holder,
                                Variant variant = Variant::CommutatorCorrected);

/// (1 + A_p^q)^{1/q} with A_p the p-norm of ||A_j|| ||A_m^{-1}||, j < m.
/// p = inf returns the C radius.
EigenvalueBound bound_theorem_2(const MatrixPolynomial& poly, NormKind kind, HolderPair holder);

/// Index of the highest nonzero coefficient below A_m (0 when A_0..A_{m-1}
/// all vanish). A coefficient counts as zero when ||A_j||_inf <= zero_tol.
int detect_gap(const MatrixPolynomial& poly, double zero_tol = 0.0);

/// Lacunary bound: root k > 1 of x^{m-p} - x^{m-p-1} - M.
///
/// Throws InvalidGap when some A_j with gap_p < j < m exceeds zero_tol.
/// When every A_j with j <= gap_p is zero the radius is 1 and
/// detail["zero_m"] = 1.
EigenvalueBound bound_theorem_3(const MatrixPolynomial& poly, NormKind kind, int gap_p,
                                double zero_tol = 0.0);

EigenvalueBound bound_theorem_4(const MatrixPolynomial& poly, NormKind kind,
                                Variant variant = Variant::CommutatorCorrected);

enum class VariantSelection { AsStated, Corrected, Both };

struct SkippedBound {
    std::string label;
    std::string reason;
};

struct BoundTable {
    std::vector<EigenvalueBound> bounds;
    std::vector<SkippedBound> skipped;
};

/// Every applicable bound: B, C, T1 and T2 over p_grid (T1 skips p = inf),
/// T3 at the detected gap, T4. T1/T4 appear once per selected variant.
///
/// SingularLeading and InvalidDegree propagate; a degenerate Cauchy
/// equation (all lower coefficients zero) is recorded as a skip.
BoundTable all_bounds(const MatrixPolynomial& poly, NormKind kind, std::span<const double> p_grid,
                      VariantSelection variants = VariantSelection::Corrected, double zero_tol = 0.0);

struct BestBound {
    EigenvalueBound best;
    BoundTable table;
};

/// Smallest radius among the corrected-variant bounds of all_bounds.
BestBound best_bound(const MatrixPolynomial& poly, NormKind kind, std::span<const double> p_grid);

// Scalar forms (n = 1), coded directly on the coefficients a_0..a_m.

/// Scalar Cauchy radius s: positive root of |a_m| z^m - |a_{m-1}| z^{m-1} - ... - |a_0|.
EigenvalueBound scalar_cauchy_radius(std::span<const Complex> coefficients);
/// Scalar outer disk 1 + max_{j<m} |a_j / a_m|.
EigenvalueBound scalar_cauchy_simple(std::span<const Complex> coefficients);
EigenvalueBound mohammad_bound(std::span<const Complex> coefficients, HolderPair holder);
EigenvalueBound montel_bound(std::span<const Complex> coefficients, HolderPair holder);

namespace detail {

/// (sum_i v_i^p)^{1/p} for nonnegative v, scaled by max(v) so that no
/// intermediate power overflows. p = inf gives max(v).
double holder_sum(std::span<const double> values, double p);

/// [1/2 (1 + sqrt(1 + 4 alpha^q))]^{1/q}, evaluated without overflow.
double holder_quadratic_radius(double alpha, double q);

}  // namespace detail

}  // namespace eigenbound
