#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "katolab/spectral_field.hpp"

namespace katolab {

// Smooth dyadic bump. chi is the C^inf cutoff with chi = 1 on [0, 3/4] and
// chi = 0 on [1, inf); the block bump is psi(r) = chi(r/2) - chi(r), so
// psi = 1 on [1, 3/2] and supp psi = [3/4, 2]. These numbers are part of the
// golden data: norms computed from them are bit-reproducible.
struct LPBump {
    static constexpr double plateau_end = 0.75; // chi = 1 below
    static constexpr double support_end = 1.0;  // chi = 0 above

    static double chi(double r) {
        if (r <= plateau_end) return 1.0;
        if (r >= support_end) return 0.0;
        double s = (r - plateau_end) / (support_end - plateau_end);
        double g0 = std::exp(-1.0 / (1.0 - s));
        double g1 = std::exp(-1.0 / s);
        return g0 / (g0 + g1);
    }

    static double psi(double r) { return chi(0.5 * r) - chi(r); }
};

struct LPDecomposition {
    // dyadic blocks (j, Delta_j f); in inhomogeneous mode the base block
    // S_0 f (all |k| <= 3/2 plus the smooth skirt) is kept separately.
    std::vector<std::pair<int, SpectralField>> blocks;
    SpectralField base; // S_0 f; zero field in homogeneous mode
    bool homogeneous = true;
};

inline int lp_max_level(const Grid& g) {
    double kmax = std::sqrt(static_cast<double>(g.dim())) * (g.modes() / 2.0);
    return static_cast<int>(std::ceil(std::log2(kmax))) + 1;
}

// Littlewood-Paley decomposition. Homogeneous mode requires a mean-zero
// field and satisfies sum_j Delta_j f = f exactly on the lattice;
// inhomogeneous mode bundles the low modes into S_0 and uses blocks j >= 1.
inline LPDecomposition littlewood_paley(const SpectralField& f, bool homogeneous = true) {
    const Grid& g = f.grid();
    if (homogeneous && !f.has_zero_mean())
        throw ZeroModeError("littlewood_paley: homogeneous decomposition needs a mean-zero field");

    LPDecomposition out{{}, SpectralField(g, f.components()), homogeneous};
    const int jmax = lp_max_level(g);
    const int jmin = homogeneous ? 0 : 1;
    const std::size_t m = f.modes();

    std::vector<double> kabs(m);
    for (std::size_t i = 0; i < m; ++i) kabs[i] = std::sqrt(g.k_squared(i));

    for (int j = jmin; j <= jmax; ++j) {
        SpectralField block(g, f.components());
        const double scale = std::pow(2.0, -j);
        bool nonzero = false;
        for (int c = 0; c < f.components(); ++c) {
            auto& bc = block.component(c);
            const auto& fc = f.component(c);
            for (std::size_t i = 1; i < m; ++i) {
                double w = LPBump::psi(kabs[i] * scale);
                if (w != 0.0) {
                    bc[i] = w * fc[i];
                    nonzero = true;
                }
            }
        }
        if (nonzero) out.blocks.emplace_back(j, std::move(block));
    }

    if (!homogeneous) {
        for (int c = 0; c < f.components(); ++c) {
            auto& bc = out.base.component(c);
            const auto& fc = f.component(c);
            bc[0] = fc[0];
            for (std::size_t i = 1; i < m; ++i) {
                double w = LPBump::chi(0.5 * kabs[i]);
                if (w != 0.0) bc[i] = w * fc[i];
            }
        }
    }
    return out;
}

} // namespace katolab
