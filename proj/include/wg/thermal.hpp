// thermal.hpp: lossless coupler dynamics for thermal inputs truncated to one photon sector

#pragma once

#include <cmath>
#include <vector>

#include "wg/errors.hpp"
#include "wg/math.hpp"
#include "wg/su2.hpp"

namespace wg {

struct ThermalOccupation {
    double nbar_a{0.0};
    double nbar_b{0.0};

    void validate() const {
        if (!(std::isfinite(nbar_a) && std::isfinite(nbar_b)) || nbar_a < 0.0 || nbar_b < 0.0)
            throw UsageError("thermal occupations must be finite and >= 0");
    }
};

/// Bose-Einstein weight nbar^n / (nbar + 1)^{n+1}.
inline double thermal_weight(double nbar, int n) {
    if (nbar < 0.0 || n < 0) throw UsageError("thermal_weight needs nbar >= 0 and n >= 0");
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(nbar) - (n + 1) * std::log1p(nbar));
}

/// Thermal weights multiplying the lossless PT spectrum. Not normalized for nbar > 0.
inline PtSpectrum thermal_pt_spectrum(int N, double Jt, const ThermalOccupation& occ) {
    occ.validate();
    PtSpectrum out = pt_spectrum_closed(N, Jt);
    for (int n = 0; n <= N; ++n) {
        const double w = thermal_weight(occ.nbar_a, n);
        out.diagonal[n] *= w * w;
    }
    for (auto& pr : out.pairs) pr.magnitude *= thermal_weight(occ.nbar_a, pr.n) * thermal_weight(occ.nbar_b, pr.m);
    return out;
}

enum class ThermalVariant {
    as_printed, ///< closed-form entropy expressions, unnormalized weights
    normalized  ///< diagonal family rescaled to a probability vector first
};

namespace detail {

// -x log2 x summed over terms; the N=2 and N=4 closed forms.
inline double case3a_entropy(double nbar, double Jt) {
    const double s2 = std::pow(std::sin(Jt), 2), c2 = std::pow(std::cos(Jt), 2);
    const double g = 1.0 / std::pow(nbar + 1.0, 2);
    return entropy_term(g * c2 * c2) +
           entropy_term(2.0 * nbar * nbar / std::pow(nbar + 1.0, 4) * s2 * c2) +
           entropy_term(g * s2 * s2);
}

inline double case3b_entropy(double nbar, double Jt) {
    const double s = std::sin(Jt), c = std::cos(Jt);
    const double n1 = nbar + 1.0;
    return entropy_term(std::pow(c, 8) / (n1 * n1)) +
           entropy_term(std::pow(nbar, 8) / std::pow(n1, 10) * std::pow(s, 8)) +
           entropy_term(4.0 * nbar * nbar / std::pow(n1, 4) * s * s * std::pow(c, 6)) +
           entropy_term(6.0 * std::pow(nbar, 4) / std::pow(n1, 6) * std::pow(s, 4) * std::pow(c, 4)) +
           entropy_term(4.0 * std::pow(nbar, 6) / std::pow(n1, 8) * std::pow(s, 6) * c * c);
}

} // namespace detail

/// Entropy (bits) of the thermal diagonal family. as_printed evaluates the N=2 and N=4
/// closed forms verbatim and the general spectrum sum for other N.
inline MeasureValue thermal_entropy(int N, double Jt, const ThermalOccupation& occ,
                                    ThermalVariant variant = ThermalVariant::as_printed) {
    occ.validate();
    if (variant == ThermalVariant::as_printed) {
        if (N == 2) return {MeasureKind::entropy, detail::case3a_entropy(occ.nbar_a, Jt)};
        if (N == 4) return {MeasureKind::entropy, detail::case3b_entropy(occ.nbar_a, Jt)};
    }
    auto lambda = thermal_pt_spectrum(N, Jt, occ).diagonal;
    if (variant == ThermalVariant::normalized) {
        double total = 0.0;
        for (double l : lambda) total += l;
        if (total > 0.0)
            for (double& l : lambda) l /= total;
    }
    double s = 0.0;
    for (double l : lambda) s += entropy_term(l);
    return {MeasureKind::entropy, s};
}

} // namespace wg
