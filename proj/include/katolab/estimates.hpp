#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "katolab/diagonal_model.hpp"
#include "katolab/duhamel.hpp"
#include "katolab/interpolation.hpp"
#include "katolab/multiplier.hpp"
#include "katolab/norms.hpp"
#include "katolab/time_grid.hpp"

namespace katolab {

struct PowerLawFit {
    double gamma = 0.0; // fitted decay exponent (minus the log-log slope)
    double c = 0.0;     // fitted prefactor
    double r2 = 0.0;
    bool reliable = false; // r2 >= 0.95
    std::vector<double> ts, values;
};

inline PowerLawFit fit_power_law(const std::vector<double>& ts, const std::vector<double>& values,
                                 double window_lo, double window_hi) {
    PowerLawFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < window_lo || ts[i] > window_hi || values[i] <= 0.0) continue;
        double x = std::log(ts[i]), y = std::log(values[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
        fit.ts.push_back(ts[i]);
        fit.values.push_back(values[i]);
    }
    if (n < 3) throw DomainError("fit_power_law: fewer than 3 points in the window");
    double mx = sx / n, my = sy / n;
    double slope = (sxy - n * mx * my) / (sxx - n * mx * mx);
    double icpt = my - slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < fit.ts.size(); ++i) {
        double y = std::log(fit.values[i]);
        double yhat = icpt + slope * std::log(fit.ts[i]);
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - my) * (y - my);
    }
    fit.gamma = -slope;
    fit.c = std::exp(icpt);
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.reliable = fit.r2 >= 0.95;
    return fit;
}

// ---------------------------------------------------------------------------
// semigroup decay on the torus

// probe family for W -> Z decay measurements: spectral bumps |k| e^{-s|k|^2}
// on a dyadic scale ladder (scale-matched near-optimizers of the decay)
inline std::vector<SpectralField> decay_probe_family(const Grid& g, double kmax_probe, double ladder_ratio = std::sqrt(2.0)) {
    std::vector<SpectralField> probes;
    const std::size_t m = g.size();
    for (double s = 1.0; s > 0.5 / (kmax_probe * kmax_probe); s /= ladder_ratio) {
        SpectralField f(g, 1);
        auto& c = f.component(0);
        for (std::size_t i = 1; i < m; ++i) {
            double k2 = g.k_squared(i);
            c[i] = Complex{std::sqrt(k2) * std::exp(-s * k2), 0.0};
        }
        probes.push_back(std::move(f));
    }
    return probes;
}

// R(t) = max over probes of ||T(t) w||_Z / ||w||_W, fitted as c t^{-gamma}
// on the given window
inline PowerLawFit decay_exponent(const std::vector<SpectralField>& probes, const SpaceTag& w_tag, const SpaceTag& z_tag,
                                  const std::vector<double>& t_grid, double window_lo, double window_hi) {
    std::vector<double> wnorms;
    wnorms.reserve(probes.size());
    for (const auto& w : probes) {
        if (!w.has_zero_mean()) throw ZeroModeError("decay_exponent: probes must be mean-zero");
        wnorms.push_back(space_norm(w, w_tag));
    }
    std::vector<double> R(t_grid.size(), 0.0);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < probes.size(); ++j) {
            if (wnorms[j] <= 0.0) continue;
            double zn = space_norm(heat_semigroup(probes[j], t_grid[i]), z_tag);
            best = std::max(best, zn / wnorms[j]);
        }
        R[i] = best;
    }
    return fit_power_law(t_grid, R, window_lo, window_hi);
}

// diagonal-model variant: R(t) = max over probes ||C T(t) x||_2 / ||x||_2
inline PowerLawFit decay_exponent_diagonal(const DiagonalModel& model, const std::vector<std::vector<double>>& probes,
                                           const std::vector<double>& t_grid, double window_lo, double window_hi) {
    std::vector<double> R(t_grid.size(), 0.0);
    std::vector<double> w(model.lambda.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        double best = 0.0;
        for (const auto& x : probes) {
            double xn = l2(x);
            if (xn <= 0.0) continue;
            for (std::size_t j = 0; j < w.size(); ++j)
                w[j] = model.c_weights[j] * std::exp(-t_grid[i] * model.lambda[j]);
            best = std::max(best, weighted_l2(w, x) / xn);
        }
        R[i] = best;
    }
    return fit_power_law(t_grid, R, window_lo, window_hi);
}

// ---------------------------------------------------------------------------
// resolvent and admissibility measurements on diagonal models

// sup over the lambda grid of lambda^{1-alpha-1/p} max_i c_i/(lambda+lambda_i)
inline double resolvent_family_bound(const DiagonalModel& model, double alpha, double p,
                                     const LogGrid& grid = LogGrid{}) {
    const double ip = p == infty ? 0.0 : 1.0 / p;
    if (!(alpha + ip > 0.0 && alpha + ip < 1.0)) throw DomainError("resolvent_family_bound: alpha + 1/p in (0,1)");
    LogGrid lg = grid.points.empty() ? LogGrid::for_spectrum(model.lambda) : grid;
    double sup = 0.0;
    for (double l : lg.points) {
        double inner = 0.0;
        for (std::size_t i = 0; i < model.lambda.size(); ++i)
            inner = std::max(inner, model.c_weights[i] / (l + model.lambda[i]));
        sup = std::max(sup, std::pow(l, 1.0 - alpha - ip) * inner);
    }
    return sup;
}

struct AdmissibilityPair {
    double lhs = 0.0; // measured trajectory / convolution constant
    double rhs = 0.0; // measured interpolation-embedding constant
};

// [A1]: lhs = max_x || t^alpha C T(t) x ||_{L^p} / ||x||,
//       rhs = max_x ||Cx|| / ||x||_{(X, X_1)_{alpha+1/p, 1}}
inline AdmissibilityPair admissibility_A1(const DiagonalModel& model, double p, double alpha,
                                          const std::vector<std::vector<double>>& probes) {
    const double ip = p == infty ? 0.0 : 1.0 / p;
    const double theta = alpha + ip;
    AdmissibilityPair out;
    LogGrid tg = LogGrid::for_spectrum(model.lambda);
    std::vector<double> w(model.lambda.size());
    WeightedCouple c01;
    c01.w0.assign(model.lambda.size(), 1.0);
    c01.w1 = model.lambda;
    for (const auto& x : probes) {
        double xn = l2(x);
        if (xn <= 0.0) continue;
        std::vector<double> vals(tg.points.size());
        for (std::size_t i = 0; i < tg.points.size(); ++i) {
            double t = tg.points[i];
            for (std::size_t j = 0; j < w.size(); ++j)
                w[j] = model.c_weights[j] * std::exp(-t * model.lambda[j]);
            // weight t^{alpha+1/p} turns the dt-integral into a dt/t-integral
            vals[i] = std::pow(t, alpha + ip) * weighted_l2(w, x);
        }
        double traj;
        if (p == infty) {
            traj = *std::max_element(vals.begin(), vals.end());
        } else {
            traj = std::pow(detail::integrate_p_dlogt(tg.points, vals, p, alpha * p + 1.0, 1.0), 1.0 / p);
        }
        out.lhs = std::max(out.lhs, traj / xn);

        double cn = weighted_l2(model.c_weights, x);
        double interp = real_interp_norm(c01, x, theta, 1.0);
        if (interp > 0.0) out.rhs = std::max(out.rhs, cn / interp);
    }
    return out;
}

// [A2]: lhs = max over (direction, interval) of
//       sup_t || int_0^t T(t-s) B u(s) ds ||_X / ||u||_{L^{p/2}_{2alpha}(W)}
//       with u = 1_{(a,b)} w;  rhs = max_w ||Bw||_{(X_-1, X)_{2(alpha+1/p), inf}} / ||w||
inline AdmissibilityPair admissibility_A2(const DiagonalModel& model, double p, double alpha,
                                          const std::vector<std::vector<double>>& probes,
                                          const std::vector<std::pair<double, double>>& intervals) {
    const double ip = p == infty ? 0.0 : 1.0 / p;
    const double theta2 = 2.0 * (alpha + ip);
    AdmissibilityPair out;
    LogGrid tg = LogGrid::for_spectrum(model.lambda);
    std::vector<double> conv(model.lambda.size());
    for (const auto& x : probes) {
        double xn = l2(x);
        if (xn <= 0.0) continue;
        for (auto [a, b] : intervals) {
            // input norm || 1_{(a,b)} w ||_{L^{p/2}_{2 alpha}(W)}
            double in_norm;
            if (p == infty) {
                in_norm = std::pow(b, 2.0 * alpha) * xn;
            } else {
                double e = alpha * p + 1.0;
                in_norm = std::pow((std::pow(b, e) - std::pow(a, e)) / e, 2.0 / p) * xn;
            }
            double best_t = 0.0;
            auto eval_at = [&](double t) {
                if (t <= a) return;
                double ub = std::min(b, t);
                for (std::size_t j = 0; j < conv.size(); ++j) {
                    double l = model.lambda[j];
                    conv[j] = model.b_weights[j] * (std::exp(-(t - ub) * l) - std::exp(-(t - a) * l)) / l;
                }
                best_t = std::max(best_t, weighted_l2(conv, x));
            };
            for (double t : tg.points) eval_at(t);
            eval_at(b);
            out.lhs = std::max(out.lhs, best_t / in_norm);
        }
        // embedding side
        std::vector<double> bx(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) bx[j] = model.b_weights[j] * x[j];
        WeightedCouple cm1;
        cm1.w0.resize(x.size());
        cm1.w1.assign(x.size(), 1.0);
        for (std::size_t j = 0; j < x.size(); ++j) cm1.w0[j] = 1.0 / model.lambda[j];
        double interp = real_interp_norm(cm1, bx, theta2, infty);
        out.rhs = std::max(out.rhs, interp / xn);
    }
    return out;
}

// Proposition-style tri-equivalence for the observation family: (i) weighted
// trajectory norm, (ii) resolvent family bound, (iii) interpolation bound
struct TriEquivalence {
    double trajectory = 0.0;
    double resolvent = 0.0;
    double interpolation = 0.0;
};

inline TriEquivalence tri_equivalence(const DiagonalModel& model, double p, double alpha,
                                      const std::vector<std::vector<double>>& probes) {
    AdmissibilityPair a1 = admissibility_A1(model, p, alpha, probes);
    TriEquivalence tri;
    tri.trajectory = a1.lhs;
    tri.interpolation = a1.rhs;
    tri.resolvent = resolvent_family_bound(model, alpha, p);
    return tri;
}

// ---------------------------------------------------------------------------
// convolution checks

// scalar Duhamel convolution int_0^{t_j} e^{-(t_j - s) lambda} g(s) ds with
// piecewise-linear g (same product-integration weights as the field version);
// g_nodes has M+1 entries including t_0
inline std::vector<double> scalar_duhamel(const std::vector<double>& g_nodes, double lambda, const TimeGrid& tg) {
    if (g_nodes.size() != static_cast<std::size_t>(tg.M) + 1) throw DomainError("scalar_duhamel: need M+1 node values");
    std::vector<double> out(static_cast<std::size_t>(tg.M) + 1, 0.0);
    double acc = 0.0;
    for (int j = 0; j < tg.M; ++j) {
        double h = tg.node(j + 1) - tg.node(j);
        double x = lambda * h;
        acc = std::exp(-x) * acc + h * (phi_left(x) * g_nodes[static_cast<std::size_t>(j)] +
                                        phi_right(x) * g_nodes[static_cast<std::size_t>(j) + 1]);
        out[static_cast<std::size_t>(j) + 1] = acc;
    }
    return out;
}

struct ConvolutionVerdict {
    double identity_residual = 0.0;
    std::vector<double> ratio_per_step;
    bool bounded = false;
    bool flagged = false;
    std::string verdict;
};

// [A3]-type measurement on a diagonal model: operator norm of
// u -> (C T(.) B) * u from L^q_beta(W) to L^p_alpha(Z) over a probe family
// extended jointly with the horizon ladder.
inline ConvolutionVerdict verify_A3_convolution(const DiagonalModel& model, double q_in, double beta, double p_out,
                                                double alpha, double gamma_claim, int steps = 6, double tau0 = 1.0,
                                                int M = 128) {
    ConvolutionVerdict res;
    const double iq = q_in == infty ? 0.0 : 1.0 / q_in;
    const double ip = p_out == infty ? 0.0 : 1.0 / p_out;
    res.identity_residual = std::abs(beta + gamma_claim + iq - 1.0 - alpha - ip);

    double sup = 0.0;
    auto measure = [&](double tau, int shape, double a, std::size_t coord) {
        TimeGrid tg(tau, M, 2.0);
        std::vector<double> g(static_cast<std::size_t>(M) + 1, 0.0);
        for (int j = 1; j <= M; ++j) {
            double t = tg.node(j);
            double v = 0.0;
            if (shape == 0) v = std::pow(t, a);
            if (shape == 1) v = t <= tau / 2.0 ? 1.0 : 0.0;
            if (shape == 2) {
                double mid = tau / 2.0, half = tau / 4.0;
                v = std::max(0.0, 1.0 - std::abs(t - mid) / half);
            }
            g[static_cast<std::size_t>(j)] = v;
        }
        g[0] = shape == 0 ? 0.0 : g[1];
        std::vector<double> gn(g.begin() + 1, g.end());
        for (auto& v : gn) v = std::abs(v);
        double in_norm = weighted_lp_time_norm(gn, q_in, beta, tg);
        if (!(in_norm > 0.0) || !std::isfinite(in_norm)) return;
        auto conv = scalar_duhamel(g, model.lambda[coord], tg);
        std::vector<double> zvals(static_cast<std::size_t>(M));
        const double cb = model.c_weights[coord] * model.b_weights[coord];
        for (int j = 1; j <= M; ++j) zvals[static_cast<std::size_t>(j) - 1] = std::abs(cb * conv[static_cast<std::size_t>(j)]);
        double out_norm = weighted_lp_time_norm(zvals, p_out, alpha, tg);
        if (std::isfinite(out_norm)) sup = std::max(sup, out_norm / in_norm);
    };

    std::vector<std::size_t> coords;
    for (std::size_t c = 0; c < model.lambda.size(); c += std::max<std::size_t>(1, model.lambda.size() / 8)) coords.push_back(c);
    coords.push_back(model.lambda.size() - 1);

    for (int e = 0; e <= steps; ++e) {
        std::vector<double> taus;
        if (e == 0)
            taus = {tau0};
        else
            taus = {tau0 * std::pow(4.0, e), tau0 * std::pow(4.0, -e)};
        for (double tau : taus) {
            for (std::size_t c : coords) {
                measure(tau, 0, 0.25, c);
                measure(tau, 0, -std::min(0.4, beta + iq - 0.05), c);
                measure(tau, 1, 0.0, c);
                measure(tau, 2, 0.0, c);
            }
        }
        res.ratio_per_step.push_back(sup);
    }
    double drift = res.ratio_per_step.back() / std::max(res.ratio_per_step.front(), 1e-300);
    res.bounded = drift < 2.0;
    res.flagged = drift > 10.0;
    res.verdict = res.bounded ? "bounded" : (res.flagged ? "unbounded" : "indeterminate");
    return res;
}

struct LinftyConvolutionReport {
    double c_hypothesis = 0.0; // sup_t t ||T(t)||_{W->U} (exact scalar maxima)
    double c_embedding = 0.0;  // measured (W, W_2)_{1/2,inf} -> U constant
    double C = 0.0;            // measured a-priori constant
};

// || (u_i v_i x_i) ||_2 helper
inline double weighted_l2_product(const std::vector<double>& u, const std::vector<double>& v,
                                  const std::vector<double>& x) {
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = u[i] * v[i];
    return weighted_l2(w, x);
}

// Lemma-style L^infty maximal bound: ess sup_t ||int_0^t T(t-s) w(s) ds||_U
// over piecewise-constant probes, with the 1/t hypothesis checked first.
inline LinftyConvolutionReport verify_linfty_convolution(const DiagonalModel& model, const std::vector<double>& U_weights,
                                                         const std::vector<std::vector<double>>& probes,
                                                         const std::vector<std::pair<double, double>>& intervals,
                                                         double c_hyp_cap = infty) {
    LinftyConvolutionReport rep;
    for (std::size_t i = 0; i < model.lambda.size(); ++i)
        rep.c_hypothesis = std::max(rep.c_hypothesis, U_weights[i] / (std::exp(1.0) * model.lambda[i]));
    if (rep.c_hypothesis > c_hyp_cap)
        throw HypothesisError("verify_linfty_convolution: ||T(t)||_{W->U} <= c/t fails at the given cap");

    WeightedCouple c02;
    c02.w0.assign(model.lambda.size(), 1.0);
    c02.w1.resize(model.lambda.size());
    for (std::size_t i = 0; i < model.lambda.size(); ++i) c02.w1[i] = model.lambda[i] * model.lambda[i];
    for (const auto& x : probes) {
        double interp = real_interp_norm(c02, x, 0.5, infty);
        double un = weighted_l2(U_weights, x);
        if (interp > 0.0) rep.c_embedding = std::max(rep.c_embedding, un / interp);
    }

    LogGrid tg = LogGrid::for_spectrum(model.lambda);
    std::vector<double> conv(model.lambda.size());
    for (const auto& x : probes) {
        double xn = l2(x);
        if (xn <= 0.0) continue;
        for (auto [a, b] : intervals) {
            double best = 0.0;
            auto eval_at = [&](double t) {
                if (t <= a) return;
                double ub = std::min(b, t);
                for (std::size_t j = 0; j < conv.size(); ++j) {
                    double l = model.lambda[j];
                    conv[j] = (std::exp(-(t - ub) * l) - std::exp(-(t - a) * l)) / l;
                }
                best = std::max(best, weighted_l2_product(U_weights, conv, x));
            };
            for (double t : tg.points) eval_at(t);
            eval_at(b);
            rep.C = std::max(rep.C, best / xn);
        }
    }
    return rep;
}

} // namespace katolab
