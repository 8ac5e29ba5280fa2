#pragma once

#include <cmath>
#include <vector>

#include "katolab/kato_solver.hpp"
#include "katolab/norms.hpp"

namespace katolab {

// Norm of the initial-data space X attached to an exponent configuration:
//   Lebesgue:      hom Besov  B^{-1+n/q}_{q,p}
//   weak Lebesgue: hom weak Besov with the same indices
//   Morrey:        (M^{q,lambda,-1}_hom, M^{q,lambda})_{lambda,p}, realized
//                  through the resolvent form || l^theta (l+A)^{-1} f ||
//   Hoelder:       inhom Besov B^{-2(alpha+1/p)+eps}_{inf,p}
inline double x_space_norm(const SpectralField& f, const ExponentConfig& cfg) {
    using S = ExponentConfig::Space;
    switch (cfg.space) {
        case S::lebesgue:
            return besov_norm(f, -1.0 + cfg.n / cfg.q, InnerNorm{false, cfg.q}, cfg.p, true);
        case S::weak_lebesgue:
            return besov_norm(f, -1.0 + cfg.n / cfg.q, InnerNorm{true, cfg.q}, cfg.p, true);
        case S::hoelder:
            return besov_norm(f, -2.0 * (cfg.alpha + cfg.inv_p()) + cfg.eps, InnerNorm{false, infty}, cfg.p, false);
        case S::morrey: {
            const double theta = cfg.lambda;
            const int per_decade = 8;
            const double lo = 1e-3, hi = 1e4;
            const int npts = static_cast<int>(std::log10(hi / lo) * per_decade) + 1;
            std::vector<double> vals(static_cast<std::size_t>(npts)), ls(static_cast<std::size_t>(npts));
            for (int i = 0; i < npts; ++i) {
                double l = lo * std::pow(10.0, static_cast<double>(i) / per_decade);
                Multiplier res{[l](const std::array<int, 3>&, double k2) { return Complex{1.0 / (l + k2), 0.0}; },
                               ZeroModeRule::reject};
                vals[static_cast<std::size_t>(i)] = std::pow(l, theta) * morrey_norm(apply_multiplier(f, res), cfg.q, cfg.lambda);
                ls[static_cast<std::size_t>(i)] = l;
            }
            if (cfg.p == infty) {
                double best = 0.0;
                for (double v : vals) best = std::max(best, v);
                return best;
            }
            // trapezoid in log lambda for int (...)^p dl/l, with power tails
            double I = 0.0;
            for (int i = 0; i + 1 < npts; ++i) {
                double fa = std::pow(vals[static_cast<std::size_t>(i)], cfg.p);
                double fb = std::pow(vals[static_cast<std::size_t>(i) + 1], cfg.p);
                I += 0.5 * (fa + fb) * std::log(ls[static_cast<std::size_t>(i) + 1] / ls[static_cast<std::size_t>(i)]);
            }
            I += std::pow(vals.front(), cfg.p) / (theta * cfg.p);          // lambda -> 0 tail
            I += std::pow(vals.back(), cfg.p) / ((1.0 - theta) * cfg.p);   // lambda -> inf tail
            return std::pow(I, 1.0 / cfg.p);
        }
    }
    throw DomainError("x_space_norm: unknown space");
}

} // namespace katolab
