#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace eigenbound {

template <typename Fdf, typename Tol>
RootResult bracketed_root(Fdf&& fdf, double lo, double hi, Tol&& tol) {
    constexpr double kBisectWidth = 1e-8;
    constexpr int kMaxIterations = 400;

    int iterations = 0;
    if (const double fhi = fdf(hi).first; std::abs(fhi) <= tol(hi)) return {hi, std::abs(fhi), 0};

    while (hi - lo > kBisectWidth * std::max(1.0, lo) && iterations < kMaxIterations) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fdf(mid).first;
        ++iterations;
        if (fm == 0) return {mid, 0.0, iterations};
        if (fm < 0) lo = mid; else hi = mid;
    }

    double x = 0.5 * (lo + hi);
    double best_x = x;
    double best_f = std::abs(fdf(x).first);
    while (iterations < kMaxIterations) {
        const auto [fx, dfx] = fdf(x);
        ++iterations;
        if (std::abs(fx) < best_f) {
            best_f = std::abs(fx);
            best_x = x;
        }
        if (std::abs(fx) <= tol(x)) return {x, std::abs(fx), iterations};
        if (fx < 0) lo = x; else hi = x;
        double next = (dfx > 0) ? x - fx / dfx : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return {best_x, best_f, iterations};
}

}  // namespace eigenbound
