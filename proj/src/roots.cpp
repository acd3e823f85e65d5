#include "eigenbound/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "eigenbound/errors.hpp"

namespace eigenbound {

namespace {

// Horner evaluation of f and f' for coefficients ordered from the highest power down.
std::pair<double, double> horner(std::span<const double> high_to_low, double x) {
    double f = 0;
    double df = 0;
    for (double c : high_to_low) {
        df = df * x + f;
        f = f * x + c;
    }
    return {f, df};
}

}  // namespace

RootResult cauchy_positive_root(double lead, std::span<const double> tail) {
    if (tail.empty()) throw InvalidDegree("cauchy_positive_root: degree must be at least 1");
    if (!std::isfinite(lead) || !(lead > 0)) {
        throw NonFiniteInput("cauchy_positive_root: leading coefficient must be finite and positive");
    }
    for (double c : tail) {
        if (!std::isfinite(c) || c < 0) {
            throw NonFiniteInput("cauchy_positive_root: tail coefficients must be finite and >= 0");
        }
    }
    const auto last_nonzero = std::find_if(tail.rbegin(), tail.rend(), [](double c) { return c != 0; });
    if (last_nonzero == tail.rend()) throw AllZeroTail("cauchy_positive_root: every tail coefficient is zero");

    // Trailing zeros (c_0 = c_1 = ... = 0) only contribute a factor z^k.
    const auto kept = static_cast<std::size_t>(tail.rend() - last_nonzero);
    const int reduced_degree = static_cast<int>(kept);

    std::vector<double> reduced;
    reduced.reserve(kept + 1);
    reduced.push_back(lead);
    for (std::size_t i = 0; i < kept; ++i) reduced.push_back(-tail[i]);

    std::vector<double> full;
    full.reserve(tail.size() + 1);
    full.push_back(lead);
    for (double c : tail) full.push_back(-c);

    const double hi = 1.0 + *std::max_element(tail.begin(), tail.end()) / lead;
    auto fdf = [&](double x) { return horner(reduced, x); };
    // |f(x)| = x^k |g(x)|, so meeting the target on the reduced g suffices.
    auto tol = [&](double x) { return kRootResidualTol * lead * std::pow(std::max(1.0, x), reduced_degree); };
    RootResult result = bracketed_root(fdf, 0.0, hi, tol);
    result.residual = std::abs(horner(full, result.root).first);
    return result;
}

RootResult trinomial_positive_root(int d, double m) {
    if (d < 1) throw InvalidDegree("trinomial_positive_root: d must be >= 1, got " + std::to_string(d));
    if (!std::isfinite(m)) throw NonFiniteInput("trinomial_positive_root: M must be finite");
    if (!(m > 0)) throw NonPositiveM("trinomial_positive_root: M must be positive");
    if (d == 1) return {1.0 + m, 0.0, 0};

    auto fdf = [&](double x) {
        const double lower = std::pow(x, d - 2);
        const double f = lower * x * (x - 1.0) - m;
        const double df = lower * (d * x - (d - 1));
        return std::pair{f, df};
    };
    auto tol = [&](double x) { return kRootResidualTol * std::pow(std::max(1.0, x), d); };
    RootResult result = bracketed_root(fdf, 1.0, 1.0 + m, tol);
    const double k = result.root;
    result.residual = std::abs(std::pow(k, d) - std::pow(k, d - 1) - m);
    return result;
}

}  // namespace eigenbound
