#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace graphpq {

// Pairwise (cascade) summation. All integrals and norms reduce through
// this so results are deterministic and accurate enough for the 1e-10
// identity checks on large graphs.
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum(std::span<const double>(xs.data(), xs.size()));
}

// sign(u)|u|^e, continuously extended by 0 at u = 0 (e > 0).
inline double signed_pow(double u, double e) {
    if (u == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(u), e), u);
}

// |u|^{p-2} u for p >= 2; equals u itself at p = 2.
inline double abs_pow_times(double u, double p) {
    if (p == 2.0) return u;
    return signed_pow(u, p - 1.0);
}

// g^{p-2} for g = |grad u|(x) >= 0, with the p = 2 convention g^0 = 1
// everywhere (including g = 0) so the 2-Laplacian matches the plain
// graph Laplacian exactly.
inline double grad_coeff(double g, double p) {
    if (p == 2.0) return 1.0;
    return std::pow(g, p - 2.0);
}

} // namespace graphpq
