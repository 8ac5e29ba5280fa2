#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "katolab/kato_solver.hpp"

namespace katolab {

// Classical explicit integrator used only as an oracle: RK4 with exact
// integrating factor for the stiff linear part, on the projected spectral
// ODE  u' = -(A + nu) u - F(u,u) + P f.
struct ReferenceResult {
    std::vector<SpectralField> states; // at the requested sample times
    double dt_max_recorded = 0.0;
};

namespace detail {

inline SpectralField scale_semigroup(const SpectralField& f, double t, double nu) {
    return heat_semigroup(f, t, nu);
}

// PL interpolation of forcing nodes at time t
inline SpectralField forcing_at(const std::vector<SpectralField>& rhs, const TimeGrid& tg, double t) {
    if (t <= 0.0) return rhs.front();
    if (t >= tg.tau) return rhs.back();
    int l = 0;
    while (l + 1 <= tg.M && tg.node(l + 1) < t) ++l;
    double a = tg.node(l), b = tg.node(l + 1);
    double w = (t - a) / (b - a);
    SpectralField out = rhs[static_cast<std::size_t>(l)];
    out *= (1.0 - w);
    SpectralField right = rhs[static_cast<std::size_t>(l) + 1];
    right *= w;
    out += right;
    return out;
}

} // namespace detail

inline ReferenceResult reference_solve(const SpectralField& u0, const std::optional<Forcing>& forcing,
                                       const std::vector<double>& sample_times, double dt,
                                       double shift_nu = 0.0, bool nonlinear = true) {
    if (!u0.is_divergence_free(1e-10)) throw InputError("reference_solve: initial field not divergence-free");
    if (dt <= 0.0) throw DomainError("reference_solve: dt must be > 0");

    const Grid& g = u0.grid();
    // advective stability bound for the explicit nonlinear term
    double umax = 0.0;
    for (double v : u0.pointwise_magnitude()) umax = std::max(umax, v);
    const double kmax = g.modes() / 2.0;
    const double dt_max = 2.8 / (kmax * std::max(umax, 1e-12));
    if (nonlinear && dt > dt_max) throw OracleError("reference_solve: dt exceeds the recorded stability bound");

    std::vector<SpectralField> rhs_nodes;
    std::optional<TimeGrid> ftg;
    if (forcing) {
        const Trajectory& any = forcing->f0 ? *forcing->f0 : *forcing->tensor;
        ftg = any.grid;
        rhs_nodes = forcing_nodes(*forcing, *ftg, g, u0.components());
    }

    auto N = [&](const SpectralField& u, double t) {
        SpectralField out(g, u.components());
        if (nonlinear) out -= nonlinearity(u, u);
        if (forcing) out += detail::forcing_at(rhs_nodes, *ftg, t);
        return out;
    };

    const double u0_l2 = u0.l2_norm();
    ReferenceResult res;
    res.dt_max_recorded = dt_max;
    SpectralField u = u0;
    double t = 0.0;
    for (double target : sample_times) {
        if (target < t - 1e-14) throw DomainError("reference_solve: sample times must be nondecreasing");
        while (target - t > 1e-14) {
            int nsub = std::max(1, static_cast<int>(std::ceil((target - t) / dt - 1e-12)));
            double h = (target - t) / nsub;
            for (int s = 0; s < nsub; ++s) {
                SpectralField a = N(u, t);
                SpectralField ua = u;
                {
                    SpectralField tmp = a;
                    tmp *= h / 2.0;
                    ua += tmp;
                }
                ua = detail::scale_semigroup(ua, h / 2.0, shift_nu);
                SpectralField b = N(ua, t + h / 2.0);
                SpectralField ub = detail::scale_semigroup(u, h / 2.0, shift_nu);
                {
                    SpectralField tmp = b;
                    tmp *= h / 2.0;
                    ub += tmp;
                }
                SpectralField c = N(ub, t + h / 2.0);
                SpectralField uc = detail::scale_semigroup(u, h, shift_nu);
                {
                    SpectralField tmp = detail::scale_semigroup(c, h / 2.0, shift_nu);
                    tmp *= h;
                    uc += tmp;
                }
                SpectralField d = N(uc, t + h);

                SpectralField acc = detail::scale_semigroup(a, h, shift_nu);
                {
                    SpectralField bc = b + c;
                    bc *= 2.0;
                    acc += detail::scale_semigroup(bc, h / 2.0, shift_nu);
                }
                acc += d;
                acc *= h / 6.0;
                u = detail::scale_semigroup(u, h, shift_nu);
                u += acc;
                t += h;
            }
            if (u.l2_norm() > 1e3 * std::max(u0_l2, 1e-300))
                throw OracleError("reference_solve: instability detected (norm growth > 1e3)");
        }
        res.states.push_back(u);
    }
    return res;
}

} // namespace katolab
