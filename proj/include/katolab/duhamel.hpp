#pragma once

#include <cmath>
#include <vector>

#include "katolab/nonlinearity.hpp"
#include "katolab/trajectory.hpp"

namespace katolab {

// Product-integration weights for int_a^b e^{-mu(t-s)} ell(s) ds with ell
// the linear interpolant between values at a and b, evaluated at t = b:
//   weight_left  = h phi_a(x),  weight_right = h phi_b(x),  x = mu h.
// Series branches keep the small-x cancellation at machine precision.
inline double phi_left(double x) {
    if (x < 0.01)
        return 0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0 + x * x * x * x / 144.0;
    return (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
}

inline double phi_right(double x) {
    if (x < 0.01)
        return 0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0 + x * x * x * x / 720.0;
    return (x + std::expm1(-x)) / (x * x);
}

// Partial-panel weights: contribution of the linear interpolant on [a,b] to
// the integral int_a^t e^{-mu(t-s)} ell(s) ds for a < t <= b. Returns the
// coefficients of ell(a) and ell(b).
inline void partial_panel_weights(double mu, double h, double t_minus_a, double& w_left, double& w_right) {
    const double tau1 = t_minus_a;
    const double y = mu * tau1;
    double I0, I1; // int_0^{tau1} e^{-mu(tau1-s)} {1, s} ds
    if (y < 0.01) {
        I0 = tau1 * (1.0 - y / 2.0 + y * y / 6.0 - y * y * y / 24.0 + y * y * y * y / 120.0);
        I1 = tau1 * tau1 * (0.5 - y / 6.0 + y * y / 24.0 - y * y * y / 120.0 + y * y * y * y / 720.0);
    } else {
        I0 = -std::expm1(-y) / mu;
        I1 = (tau1 - I0) / mu;
    }
    w_left = (h * I0 - I1) / h;
    w_right = I1 / h;
}

// Duhamel convolution int_0^{t_j} T(t_j - s) G(s) ds of node fields G,
// advanced panel by panel: I_{j+1} = T(t_{j+1}-t_j) I_j + (exact hat-function
// integrals of the current panel). The generator is -Delta + nu.
inline Trajectory duhamel_of_nodes(const std::vector<SpectralField>& G, const TimeGrid& tg, double shift_nu = 0.0) {
    if (G.size() != static_cast<std::size_t>(tg.M) + 1) throw GridError("duhamel_of_nodes: need M+1 node fields");
    const Grid& g = G[0].grid();
    const std::size_t m = g.size();
    const int ncomp = G[0].components();

    std::vector<double> mu(m);
    for (std::size_t i = 0; i < m; ++i) mu[i] = g.k_squared(i) + shift_nu;

    Trajectory out(tg, SpectralField(g, ncomp));
    SpectralField acc(g, ncomp);
    std::vector<double> decay(m), wl(m), wr(m);
    for (int j = 0; j < tg.M; ++j) {
        const double h = tg.node(j + 1) - tg.node(j);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = mu[i] * h;
            decay[i] = std::exp(-x);
            wl[i] = h * phi_left(x);
            wr[i] = h * phi_right(x);
        }
        for (int c = 0; c < ncomp; ++c) {
            auto& a = acc.component(c);
            const auto& gl = G[static_cast<std::size_t>(j)].component(c);
            const auto& gr = G[static_cast<std::size_t>(j) + 1].component(c);
            for (std::size_t i = 0; i < m; ++i) a[i] = decay[i] * a[i] + wl[i] * gl[i] + wr[i] * gr[i];
        }
        out.at(j + 1) = acc;
    }
    return out;
}

// Evaluate the Duhamel convolution at an off-node time t in (0, tau], given
// the node values produced by duhamel_of_nodes and the same node fields G.
inline SpectralField duhamel_evaluate(const Trajectory& D, const std::vector<SpectralField>& G, double t,
                                      double shift_nu = 0.0) {
    const TimeGrid& tg = D.grid;
    if (t <= 0.0 || t > tg.tau * (1.0 + 1e-12)) throw DomainError("duhamel_evaluate: t outside (0, tau]");
    int l = 0;
    while (l + 1 <= tg.M && tg.node(l + 1) < t) ++l; // panel [t_l, t_{l+1}] contains t
    const Grid& g = G[0].grid();
    const std::size_t m = g.size();
    const double a = tg.node(l), b = tg.node(l + 1), h = b - a;
    SpectralField out = D.at(l);
    for (int c = 0; c < out.components(); ++c) {
        auto& oc = out.component(c);
        const auto& gl = G[static_cast<std::size_t>(l)].component(c);
        const auto& gr = G[static_cast<std::size_t>(l) + 1].component(c);
        for (std::size_t i = 0; i < m; ++i) {
            const double mu = g.k_squared(i) + shift_nu;
            double wl, wr;
            partial_panel_weights(mu, h, t - a, wl, wr);
            oc[i] = std::exp(-mu * (t - a)) * oc[i] + wl * gl[i] + wr * gr[i];
        }
    }
    return out;
}

// per-node quadratic term G_j = F(u(t_j), v(t_j))
inline std::vector<SpectralField> bilinear_nodes(const Trajectory& u, const Trajectory& v) {
    u.check_compatible(v);
    std::vector<SpectralField> G;
    G.reserve(static_cast<std::size_t>(u.nodes()));
    for (int j = 0; j < u.nodes(); ++j) G.push_back(nonlinearity(u.at(j), v.at(j)));
    return G;
}

// int_0^t T(t-s) F(u(s), v(s)) ds with piecewise-linear-in-s integrand
inline Trajectory duhamel_bilinear(const Trajectory& u, const Trajectory& v, double shift_nu = 0.0) {
    return duhamel_of_nodes(bilinear_nodes(u, v), u.grid, shift_nu);
}

} // namespace katolab
