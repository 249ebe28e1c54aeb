// math.hpp: small numerical helpers (binomials, Shannon entropy, eigenvalue clamping)

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "wg/errors.hpp"

namespace wg {

using cplx = std::complex<double>;

inline constexpr double kClampTolerance = 1e-9;

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// -x log2 x with 0 log 0 = 0.
inline double entropy_term(double x) {
    return x > 0.0 ? -x * std::log2(x) : 0.0;
}

/// Shannon entropy in bits of a (possibly noisy) probability vector.
/// Entries in [-kClampTolerance, 0) are treated as zero, more negative ones are rejected.
inline double shannon_bits(std::span<const double> p) {
    double s = 0.0;
    for (double x : p) {
        if (x < -kClampTolerance)
            throw ValidityError("negative eigenvalue " + std::to_string(x) + " in entropy input");
        s += entropy_term(std::clamp(x, 0.0, 1.0));
    }
    return s;
}

inline void sort_descending(std::vector<double>& v) {
    std::sort(v.begin(), v.end(), [](double a, double b) { return a > b; });
}

} // namespace wg
