#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "katolab/data_space.hpp"
#include "katolab/kato_solver.hpp"

namespace katolab {

// Measured bound eta of the bilinear map on E over a probe corpus of
// trajectories, inflated by a safety factor 2. The abstract eta exists but
// carries no constant; this is the computable surrogate.
inline double measure_eta(const std::vector<Trajectory>& corpus, const KatoConfig& cfg) {
    const WeightedTimeNorm enorm = cfg.e_norm();
    std::vector<double> norms;
    norms.reserve(corpus.size());
    for (const auto& e : corpus) norms.push_back(trajectory_norm(e, enorm));
    double best = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            if (norms[i] <= 0.0 || norms[j] <= 0.0) continue;
            Trajectory b = duhamel_bilinear(corpus[i], corpus[j], cfg.shift_nu);
            best = std::max(best, trajectory_norm(b, enorm) / (norms[i] * norms[j]));
        }
    }
    return 2.0 * best;
}

// Probe corpus for eta: free heat evolutions of the given fields.
inline std::vector<Trajectory> eta_probe_corpus(const std::vector<SpectralField>& seeds, const KatoConfig& cfg) {
    std::vector<Trajectory> out;
    out.reserve(seeds.size());
    const TimeGrid tg = cfg.time_grid();
    for (const auto& s : seeds) out.push_back(free_evolution(s, tg, cfg.shift_nu));
    return out;
}

// eta restricted to the Picard orbit of a direction: probes are the free
// evolution and the first iterates at a reference amplitude.
inline double measure_eta_on_orbit(const SpectralField& direction, double ref_amplitude, const KatoConfig& cfg) {
    SpectralField d0 = direction;
    d0 *= ref_amplitude;
    std::vector<Trajectory> corpus;
    Trajectory y = free_evolution(d0, cfg.time_grid(), cfg.shift_nu);
    Trajectory z1 = y - duhamel_bilinear(y, y, cfg.shift_nu);
    Trajectory z2 = y - duhamel_bilinear(z1, z1, cfg.shift_nu);
    corpus.push_back(std::move(y));
    corpus.push_back(std::move(z1));
    corpus.push_back(std::move(z2));
    // normalize so the measured ratio is amplitude-independent
    const WeightedTimeNorm enorm = cfg.e_norm();
    for (auto& t : corpus) {
        double n = trajectory_norm(t, enorm);
        if (n > 0.0) t *= 1.0 / n;
    }
    return measure_eta(corpus, cfg);
}

struct ThresholdResult {
    double threshold = 0.0;  // sup of converged amplitudes
    bool infinite = false;   // no divergence up to the amplitude cap
    double prediction = 0.0; // 1/(4 eta ||y_unit||_E), amplitude units
    bool prediction_infinite = false;
    std::vector<std::pair<double, bool>> samples; // (amplitude, converged)
    bool monotone = true;
    std::string verdict;
};

// Bisection of the critical amplitude along a direction, normalized in the
// configured X-norm. Returns the +inf sentinel when every tested amplitude
// up to the cap converges.
inline ThresholdResult smallness_threshold(const SpectralField& direction, const KatoConfig& cfg,
                                           double c0 = 1e-3, int max_doublings = 24, double rel_width = 0.05) {
    ThresholdResult res;
    const double xn = x_space_norm(direction, cfg.exponents);
    if (xn <= 0.0) {
        res.infinite = true;
        res.threshold = infty;
        res.verdict = "zero direction";
        return res;
    }
    SpectralField unit = direction;
    unit *= 1.0 / xn;

    const double y_unit = trajectory_norm(free_evolution(unit, cfg.time_grid(), cfg.shift_nu), cfg.e_norm());
    if (cfg.eta_bilinear > 0.0 && y_unit > 0.0) {
        res.prediction = 1.0 / (4.0 * cfg.eta_bilinear * y_unit);
    } else {
        res.prediction = infty;
        res.prediction_infinite = true;
    }

    auto converges = [&](double c) {
        SpectralField v = unit;
        v *= c;
        try {
            (void)picard_solve(v, std::nullopt, cfg);
            res.samples.emplace_back(c, true);
            return true;
        } catch (const SolverDivergence&) {
            res.samples.emplace_back(c, false);
            return false;
        } catch (const NoConvergenceError&) {
            res.samples.emplace_back(c, false);
            return false;
        }
    };

    double c = c0;
    if (!converges(c)) {
        // walk down until a converging amplitude is found
        int halvings = 0;
        while (halvings++ < 60 && !converges(c /= 2.0)) {}
        if (halvings >= 60) {
            res.threshold = 0.0;
            res.verdict = "no converging amplitude found";
            return res;
        }
    }
    double lo = c, hi = 0.0;
    for (int d = 0; d < max_doublings; ++d) {
        double next = lo * 2.0;
        if (converges(next)) {
            lo = next;
        } else {
            hi = next;
            break;
        }
    }
    if (hi == 0.0) {
        res.infinite = true;
        res.threshold = infty;
        res.verdict = "all amplitudes converged up to the cap";
    } else {
        while ((hi - lo) / lo > rel_width) {
            double mid = std::sqrt(lo * hi);
            if (converges(mid))
                lo = mid;
            else
                hi = mid;
        }
        res.threshold = lo;
        res.verdict = "bisected";
    }

    // monotonicity: every converged amplitude below every diverged one
    double max_conv = 0.0, min_div = infty;
    for (auto& [amp, ok] : res.samples)
        (ok ? max_conv = std::max(max_conv, amp) : min_div = std::min(min_div, amp));
    res.monotone = max_conv <= min_div;
    if (!res.monotone) res.verdict += " (ThresholdAmbiguous: non-monotone convergence pattern)";
    return res;
}

} // namespace katolab
