#pragma once

#include <cmath>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "katolab/time_grid.hpp"

namespace katolab {

// (T_gamma f)(t) = int_0^t f(s) (t-s)^{-gamma} ds by product integration on
// the graded grid: exact for s^{a0} times a piecewise-linear factor. The
// origin exponent a0 models power-law growth of f at t = 0 (default: f
// bounded near 0). Output at every node t_1..t_M.
inline std::vector<double> hardy_littlewood_apply(const std::vector<double>& f, double gamma, const TimeGrid& tg,
                                                  double origin_exponent = 0.0) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("hardy_littlewood_apply: gamma must lie in (0,1)");
    if (static_cast<int>(f.size()) != tg.M) throw DomainError("hardy_littlewood_apply: need one value per node");
    if (!(origin_exponent > -1.0)) throw DomainError("hardy_littlewood_apply: origin exponent must exceed -1");

    const int M = tg.M;
    const double a0 = origin_exponent;
    std::vector<double> t(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) t[static_cast<std::size_t>(j)] = tg.node(j);
    std::vector<double> out(static_cast<std::size_t>(M), 0.0);

    if (a0 == 0.0) {
        // elementary antiderivatives of (c0 + c1 s)(t-s)^{-gamma}
        auto J0 = [gamma](double x, double tt) {
            return (std::pow(tt, 1.0 - gamma) - std::pow(tt - x, 1.0 - gamma)) / (1.0 - gamma);
        };
        auto J1 = [gamma](double x, double tt) {
            return tt * (std::pow(tt, 1.0 - gamma) - std::pow(tt - x, 1.0 - gamma)) / (1.0 - gamma) -
                   (std::pow(tt, 2.0 - gamma) - std::pow(tt - x, 2.0 - gamma)) / (2.0 - gamma);
        };
        for (int j = 1; j <= M; ++j) {
            const double tt = t[static_cast<std::size_t>(j)];
            // first panel: f constant f_1 on (0, t_1]
            double acc = f[0] * J0(t[1], tt);
            for (int l = 1; l < j; ++l) {
                const double ta = t[static_cast<std::size_t>(l)], tb = t[static_cast<std::size_t>(l) + 1];
                const double fa = f[static_cast<std::size_t>(l) - 1], fb = f[static_cast<std::size_t>(l)];
                const double c1 = (fb - fa) / (tb - ta), c0 = fa - c1 * ta;
                acc += c0 * (J0(tb, tt) - J0(ta, tt)) + c1 * (J1(tb, tt) - J1(ta, tt));
            }
            out[static_cast<std::size_t>(j) - 1] = acc;
        }
        return out;
    }

    // general origin exponent: f(s) = s^{a0} g(s) with g piecewise linear;
    // panel integrals need the incomplete Beta function
    auto Ib = [gamma](double b, double x, double tt) {
        return std::pow(tt, 1.0 + b - gamma) * boost::math::beta(1.0 + b, 1.0 - gamma, x / tt);
    };
    for (int j = 1; j <= M; ++j) {
        const double tt = t[static_cast<std::size_t>(j)];
        // first panel: f(s) = f_1 (s/t_1)^{a0}
        double acc = f[0] * std::pow(t[1], -a0) * Ib(a0, t[1], tt);
        for (int l = 1; l < j; ++l) {
            const double ta = t[static_cast<std::size_t>(l)], tb = t[static_cast<std::size_t>(l) + 1];
            const double ga = f[static_cast<std::size_t>(l) - 1] * std::pow(ta, -a0);
            const double gb = f[static_cast<std::size_t>(l)] * std::pow(tb, -a0);
            const double c1 = (gb - ga) / (tb - ta), c0 = ga - c1 * ta;
            acc += c0 * (Ib(a0, tb, tt) - Ib(a0, ta, tt)) + c1 * (Ib(a0 + 1.0, tb, tt) - Ib(a0 + 1.0, ta, tt));
        }
        out[static_cast<std::size_t>(j) - 1] = acc;
    }
    return out;
}

struct HLBoundResult {
    double q, beta, p, alpha, gamma;
    double identity_residual = 0.0;
    std::vector<double> ratio_per_step; // cumulative sup per extension step
    bool stable = false;
    bool unbounded = false;
    std::string verdict;
};

// Measured boundedness probe for T_gamma: L^q_beta -> L^p_alpha. The probe
// family (powers toward the critical exponent, truncated powers, bumps) is
// extended jointly with a dyadic widening of the horizon; the sup is
// cumulative over steps. Stability (< 2x drift) is the 'bounded' verdict,
// growth (> 10x) the 'unbounded' one.
inline HLBoundResult hardy_littlewood_bound_probe(double q, double beta, double p, double alpha, double gamma,
                                                  int steps = 8, double tau0 = 1.0, int M = 256) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("hardy_littlewood_bound_probe: gamma in (0,1)");
    HLBoundResult res{q, beta, p, alpha, gamma, 0.0, {}, false, false, ""};
    const double iq = q == infty ? 0.0 : 1.0 / q;
    const double ip = p == infty ? 0.0 : 1.0 / p;
    res.identity_residual = std::abs(1.0 + alpha - beta - gamma - (iq - ip));

    // critical origin exponents: input blows below -beta-1/q, output below
    // gamma-alpha-1-1/p
    const double a_in = -beta - iq;
    const double a_out = gamma - alpha - 1.0 - ip;
    const double a_crit = std::max(a_in, a_out);

    double sup = 0.0;
    auto measure = [&](double tau, double a, int shape) {
        TimeGrid tg(tau, M, 2.0);
        std::vector<double> f(static_cast<std::size_t>(M));
        for (int j = 1; j <= M; ++j) {
            double t = tg.node(j);
            double v = std::pow(t, a);
            if (shape == 1 && t > tau / 2.0) v = 0.0; // truncated power
            if (shape == 2) {                         // tent on [tau/4, 3tau/4]
                double mid = tau / 2.0, half = tau / 4.0;
                v = std::max(0.0, 1.0 - std::abs(t - mid) / half);
            }
            f[static_cast<std::size_t>(j) - 1] = v;
        }
        double in_norm = weighted_lp_time_norm(f, q, beta, tg);
        if (!(in_norm > 0.0) || !std::isfinite(in_norm)) return;
        auto Tf = hardy_littlewood_apply(f, gamma, tg);
        for (auto& v : Tf) v = std::abs(v);
        double out_norm = weighted_lp_time_norm(Tf, p, alpha, tg);
        if (std::isfinite(out_norm)) sup = std::max(sup, out_norm / in_norm);
    };

    for (int e = 0; e <= steps; ++e) {
        std::vector<double> taus;
        if (e == 0) {
            taus = {tau0};
        } else {
            taus = {tau0 * std::pow(4.0, e), tau0 * std::pow(4.0, -e)};
        }
        for (double tau : taus) {
            for (int mstep = 0; mstep <= std::min(e, 5); ++mstep) {
                double a = a_crit + 0.3 * std::pow(2.0, -mstep);
                measure(tau, a, 0);
            }
            measure(tau, a_crit + 0.5, 0);
            measure(tau, a_crit + 0.3, 1);
            measure(tau, 0.0, 2);
        }
        res.ratio_per_step.push_back(sup);
    }

    const double drift = res.ratio_per_step.back() / std::max(res.ratio_per_step.front(), 1e-300);
    res.stable = drift < 2.0;
    res.unbounded = drift > 10.0;
    res.verdict = res.stable ? "stable" : (res.unbounded ? "unbounded" : "indeterminate");
    return res;
}

} // namespace katolab
