#include "eigenbound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "eigenbound/roots.hpp"

namespace eigenbound {

namespace {

void require_degree(const MatrixPolynomial& poly) {
    if (poly.degree() < 1) throw InvalidDegree("bounds need a matrix polynomial of degree >= 1");
}

/// ||A_m^{-1}||, or SingularLeading.
double leading_inverse_norm(const MatrixPolynomial& poly, NormKind kind) {
    try {
        return induced_norm(inverse(poly.leading()), kind);
    } catch (const SingularError&) {
        throw SingularLeading();
    }
}

/// ||(A_m^2)^{-1}||; never ||A_m^{-1}||^2.
double leading_square_inverse_norm(const MatrixPolynomial& poly, NormKind kind) {
    try {
        return induced_norm(inverse(mat_mul(poly.leading(), poly.leading())), kind);
    } catch (const SingularError&) {
        throw SingularLeading("A_m^2 is singular to working precision");
    }
}

/// ||A_j|| ||A_m^{-1}|| for j = 0..m-1.
std::vector<double> lower_ratios(const MatrixPolynomial& poly, NormKind kind, double inv_norm) {
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(poly.degree()));
    for (int j = 0; j < poly.degree(); ++j) ratios.push_back(induced_norm(poly[j], kind) * inv_norm);
    return ratios;
}

/// ||A_{m-1}A_{m-r} - A_m A_{m-r-1}|| ||(A_m^2)^{-1}|| for r = 0..m.
std::vector<double> product_ratios(const MatrixPolynomial& poly, NormKind kind) {
    const double inv_sq = leading_square_inverse_norm(poly, kind);
    std::vector<double> ratios;
    for (const auto& term : product_terms(poly)) ratios.push_back(induced_norm(term.value, kind) * inv_sq);
    return ratios;
}

/// Smallest R >= 1 with c0 / R + beta / (R (R^q - 1)^{1/q}) <= 1.
double split_holder_radius(double c0, double beta, double q) {
    if (c0 == 0) return detail::holder_quadratic_radius(beta, q);
    if (beta == 0) return std::max(1.0, c0);
    auto excess = [&](double r) {
        return c0 / r + beta / (r * std::pow(std::pow(r, q) - 1.0, 1.0 / q)) - 1.0;
    };
    double lo = 1.0;
    double hi = std::max({1.0, 2.0 * c0, detail::holder_quadratic_radius(2.0 * beta, q)});
    while (excess(hi) > 0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0) lo = mid; else hi = mid;
    }
    // hi always satisfies the inequality, so it is the safe side.
    return hi;
}

std::string format_number(double value) {
    std::ostringstream out;
    if (std::isinf(value)) return "inf";
    out << value;
    return out.str();
}

}  // namespace

namespace detail {

double holder_sum(std::span<const double> values, double p) {
    if (values.empty()) return 0.0;
    const double largest = *std::max_element(values.begin(), values.end());
    if (largest == 0 || std::isinf(p)) return largest;
    double acc = 0;
    for (double v : values) acc += std::pow(v / largest, p);
    return largest * std::pow(acc, 1.0 / p);
}

double holder_quadratic_radius(double alpha, double q) {
    if (alpha == 0) return 1.0;
    // x solves x^2 - x - alpha^q = 0 and the radius is x^{1/q}.
    const double t = std::pow(alpha, q);
    if (std::isfinite(t)) return std::pow(0.5 + std::sqrt(0.25 + t), 1.0 / q);
    // alpha^q overflows; then x = alpha^{q/2} to working precision.
    return std::sqrt(alpha);
}

}  // namespace detail

std::string_view to_string(Theorem theorem) {
    switch (theorem) {
        case Theorem::A: return "A";
        case Theorem::B: return "B";
        case Theorem::C: return "C";
        case Theorem::T1: return "T1";
        case Theorem::T2: return "T2";
        case Theorem::T3: return "T3";
        case Theorem::T4: return "T4";
        case Theorem::Mohammad: return "Mohammad";
        case Theorem::Montel: return "Montel";
    }
    return "?";
}

std::string_view to_string(Variant variant) {
    return variant == Variant::AsStated ? "as-stated" : "corrected";
}

std::optional<Variant> parse_variant(std::string_view text) {
    if (text == "as-stated") return Variant::AsStated;
    if (text == "corrected") return Variant::CommutatorCorrected;
    return std::nullopt;
}

HolderPair HolderPair::from_p(double p) {
    if (std::isnan(p) || !(p > 1)) {
        throw InvalidHolder("Hoelder exponent p must exceed 1, got " + format_number(p));
    }
    if (std::isinf(p)) return {p, 1.0};
    return {p, p / (p - 1.0)};
}

std::string EigenvalueBound::label() const {
    std::string out(to_string(theorem));
    if (variant) out += "[" + std::string(to_string(*variant)) + "]";
    if (holder) out += "(p=" + format_number(holder->p) + ")";
    if (theorem == Theorem::A && detail.count("M")) out += "(1+M)";
    return out;
}

std::vector<CoefficientProductTerm> product_terms(const MatrixPolynomial& poly) {
    require_degree(poly);
    const int m = poly.degree();
    const Matrix& lead = poly.leading();
    const Matrix& next = poly[m - 1];
    std::vector<CoefficientProductTerm> terms;
    terms.reserve(static_cast<std::size_t>(m + 1));
    for (int r = 0; r <= m; ++r) {
        terms.push_back({r, mat_sub(mat_mul(next, poly.coefficient(m - r)),
                                    mat_mul(lead, poly.coefficient(m - r - 1)))});
    }
    return terms;
}

EigenvalueBound bound_theorem_b(const MatrixPolynomial& poly, NormKind kind) {
    require_degree(poly);
    const double lead = 1.0 / leading_inverse_norm(poly, kind);
    std::vector<double> tail;
    for (int j = poly.degree() - 1; j >= 0; --j) tail.push_back(induced_norm(poly[j], kind));
    const RootResult root = cauchy_positive_root(lead, tail);
    EigenvalueBound bound{.radius = root.root, .strict = false, .theorem = Theorem::B, .norm = kind};
    bound.detail = {{"rho", root.root},
                    {"lead", lead},
                    {"root_residual", root.residual},
                    {"root_iterations", root.iterations}};
    return bound;
}

EigenvalueBound bound_theorem_c(const MatrixPolynomial& poly, NormKind kind) {
    require_degree(poly);
    const auto ratios = lower_ratios(poly, kind, leading_inverse_norm(poly, kind));
    const double m = *std::max_element(ratios.begin(), ratios.end());
    EigenvalueBound bound{.radius = 1.0 + m, .strict = true, .theorem = Theorem::C, .norm = kind};
    bound.detail = {{"M", m}};
    return bound;
}

EigenvalueBound bound_theorem_1(const MatrixPolynomial& poly, NormKind kind, HolderPair holder,
                                Variant variant) {
    require_degree(poly);
    if (holder.is_infinite() || !(holder.p > 1)) {
        throw InvalidHolder("T1 needs a finite Hoelder exponent p > 1");
    }
    const auto ratios = product_ratios(poly, kind);
    const double commutator = ratios.front();
    const double alpha = detail::holder_sum(std::span(ratios).subspan(1), holder.p);
    const double radius = variant == Variant::AsStated ? detail::holder_quadratic_radius(alpha, holder.q)
                                                       : split_holder_radius(commutator, alpha, holder.q);
    EigenvalueBound bound{.radius = radius, .strict = true, .theorem = Theorem::T1, .norm = kind};
    bound.holder = holder;
    bound.variant = variant;
    if (variant == Variant::CommutatorCorrected && alpha == 0 && commutator > 1) bound.strict = false;
    bound.detail = {{"alpha_p", alpha}, {"commutator_ratio", commutator}};
    return bound;
}

EigenvalueBound bound_theorem_2(const MatrixPolynomial& poly, NormKind kind, HolderPair holder) {
    require_degree(poly);
    if (!(holder.p > 1)) throw InvalidHolder("T2 needs p > 1");
    if (holder.is_infinite()) {
        EigenvalueBound bound = bound_theorem_c(poly, kind);
        bound.theorem = Theorem::T2;
        bound.holder = holder;
        bound.detail = {{"A_p", bound.detail.at("M")}};
        return bound;
    }
    const auto ratios = lower_ratios(poly, kind, leading_inverse_norm(poly, kind));
    const double a_p = detail::holder_sum(ratios, holder.p);
    const std::array<double, 2> pair{1.0, a_p};
    EigenvalueBound bound{.radius = detail::holder_sum(pair, holder.q), .strict = true,
                          .theorem = Theorem::T2, .norm = kind};
    bound.holder = holder;
    bound.detail = {{"A_p", a_p}};
    return bound;
}

int detect_gap(const MatrixPolynomial& poly, double zero_tol) {
    require_degree(poly);
    int p = poly.degree() - 1;
    while (p > 0 && induced_norm(poly[p], NormKind::InducedInf) <= zero_tol) --p;
    return p;
}

EigenvalueBound bound_theorem_3(const MatrixPolynomial& poly, NormKind kind, int gap_p, double zero_tol) {
    require_degree(poly);
    const int m = poly.degree();
    if (gap_p < 0 || gap_p > m - 1) {
        throw InvalidGap("gap index must lie in [0, m-1], got " + std::to_string(gap_p));
    }
    for (int j = gap_p + 1; j < m; ++j) {
        if (induced_norm(poly[j], NormKind::InducedInf) > zero_tol) {
            throw InvalidGap("A_" + std::to_string(j) + " is nonzero inside the requested gap");
        }
    }
    const double inv_norm = leading_inverse_norm(poly, kind);
    double big_m = 0;
    for (int j = 0; j <= gap_p; ++j) big_m = std::max(big_m, induced_norm(poly[j], kind) * inv_norm);

    const int d = m - gap_p;
    EigenvalueBound bound{.radius = 1.0, .strict = true, .theorem = Theorem::T3, .norm = kind};
    bound.detail = {{"M", big_m}, {"gap_p", gap_p}, {"d", d}};
    if (big_m == 0) {
        bound.detail["zero_m"] = 1;
        bound.detail["k"] = 1.0;
        return bound;
    }
    const RootResult root = trinomial_positive_root(d, big_m);
    bound.radius = root.root;
    bound.detail["k"] = root.root;
    bound.detail["root_residual"] = root.residual;
    return bound;
}

EigenvalueBound bound_theorem_4(const MatrixPolynomial& poly, NormKind kind, Variant variant) {
    require_degree(poly);
    const auto ratios = product_ratios(poly, kind);
    const double commutator = ratios.front();
    const double big_m = *std::max_element(ratios.begin() + 1, ratios.end());
    double radius = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * big_m));
    if (variant == Variant::CommutatorCorrected && commutator != 0) {
        // Smallest R >= 1 with c0 / R + M / (R (R - 1)) <= 1.
        radius = 0.5 * ((1.0 + commutator) + std::sqrt((1.0 - commutator) * (1.0 - commutator) + 4.0 * big_m));
    }
    EigenvalueBound bound{.radius = radius, .strict = true, .theorem = Theorem::T4, .norm = kind};
    bound.variant = variant;
    if (variant == Variant::CommutatorCorrected && big_m == 0 && commutator > 1) bound.strict = false;
    bound.detail = {{"M", big_m}, {"commutator_ratio", commutator}};
    return bound;
}

BoundTable all_bounds(const MatrixPolynomial& poly, NormKind kind, std::span<const double> p_grid,
                      VariantSelection variants, double zero_tol) {
    require_degree(poly);
    std::vector<HolderPair> holders;
    for (double p : p_grid) holders.push_back(HolderPair::from_p(p));

    std::vector<Variant> selected;
    if (variants != VariantSelection::AsStated) selected.push_back(Variant::CommutatorCorrected);
    if (variants != VariantSelection::Corrected) selected.push_back(Variant::AsStated);

    BoundTable table;
    try {
        table.bounds.push_back(bound_theorem_b(poly, kind));
    } catch (const AllZeroTail& e) {
        table.skipped.push_back({"B", e.what()});
    }
    table.bounds.push_back(bound_theorem_c(poly, kind));
    for (Variant v : selected) {
        for (const HolderPair& h : holders) {
            if (h.is_infinite()) {
                table.skipped.push_back({"T1[" + std::string(to_string(v)) + "](p=inf)",
                                         "T1 is stated for finite p only"});
                continue;
            }
            table.bounds.push_back(bound_theorem_1(poly, kind, h, v));
        }
    }
    for (const HolderPair& h : holders) table.bounds.push_back(bound_theorem_2(poly, kind, h));
    table.bounds.push_back(bound_theorem_3(poly, kind, detect_gap(poly, zero_tol), zero_tol));
    for (Variant v : selected) table.bounds.push_back(bound_theorem_4(poly, kind, v));
    return table;
}

BestBound best_bound(const MatrixPolynomial& poly, NormKind kind, std::span<const double> p_grid) {
    BoundTable table = all_bounds(poly, kind, p_grid, VariantSelection::Corrected);
    const auto best = std::min_element(table.bounds.begin(), table.bounds.end(),
                                       [](const auto& a, const auto& b) { return a.radius < b.radius; });
    return {*best, std::move(table)};
}

namespace {

void require_scalar_degree(std::span<const Complex> a) {
    if (a.size() < 2) throw InvalidDegree("scalar bound needs degree >= 1");
    if (a.back() == Complex(0)) throw InvalidDegree("leading scalar coefficient is zero");
}

}  // namespace

EigenvalueBound scalar_cauchy_radius(std::span<const Complex> a) {
    require_scalar_degree(a);
    std::vector<double> tail;
    for (std::size_t j = a.size() - 1; j-- > 0;) tail.push_back(std::abs(a[j]));
    const RootResult root = cauchy_positive_root(std::abs(a.back()), tail);
    EigenvalueBound bound{.radius = root.root, .strict = false, .theorem = Theorem::A};
    bound.detail = {{"s", root.root}, {"root_residual", root.residual}};
    return bound;
}

EigenvalueBound scalar_cauchy_simple(std::span<const Complex> a) {
    require_scalar_degree(a);
    double m = 0;
    for (std::size_t j = 0; j + 1 < a.size(); ++j) m = std::max(m, std::abs(a[j] / a.back()));
    EigenvalueBound bound{.radius = 1.0 + m, .strict = true, .theorem = Theorem::A};
    bound.detail = {{"M", m}};
    return bound;
}

EigenvalueBound mohammad_bound(std::span<const Complex> a, HolderPair holder) {
    require_scalar_degree(a);
    if (holder.is_infinite()) throw InvalidHolder("Mohammad's bound needs finite p");
    const int m = static_cast<int>(a.size()) - 1;
    auto coeff = [&](int j) { return j < 0 ? Complex(0) : a[static_cast<std::size_t>(j)]; };
    const double lead_sq = std::norm(a.back());
    std::vector<double> ratios;
    for (int r = 1; r <= m; ++r) {
        ratios.push_back(std::abs(coeff(m - 1) * coeff(m - r) - coeff(m) * coeff(m - r - 1)) / lead_sq);
    }
    const double alpha = detail::holder_sum(ratios, holder.p);
    EigenvalueBound bound{.radius = detail::holder_quadratic_radius(alpha, holder.q), .strict = true,
                          .theorem = Theorem::Mohammad};
    bound.holder = holder;
    bound.detail = {{"alpha_p", alpha}};
    return bound;
}

EigenvalueBound montel_bound(std::span<const Complex> a, HolderPair holder) {
    require_scalar_degree(a);
    std::vector<double> ratios;
    for (std::size_t j = 0; j + 1 < a.size(); ++j) ratios.push_back(std::abs(a[j] / a.back()));
    const double a_p = detail::holder_sum(ratios, holder.p);
    const std::array<double, 2> pair{1.0, a_p};
    EigenvalueBound bound{.radius = detail::holder_sum(pair, holder.q), .strict = true,
                          .theorem = Theorem::Montel};
    bound.holder = holder;
    bound.detail = {{"A_p", a_p}};
    return bound;
}

}  // namespace eigenbound
