#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "katolab/diagonal_model.hpp"

namespace katolab {

// Coordinatewise K-functional surrogate for the couple (l^2(w0), l^2(w1)):
// K(t,x) = || min(w0_i, t w1_i) x_i ||_2. Equivalent (not equal) to the true
// K-functional with a dimension-free constant <= sqrt(2).
inline double k_functional(const WeightedCouple& c, const std::vector<double>& x, double t) {
    if (!(t > 0.0)) throw DomainError("k_functional: t must be > 0");
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::min(c.w0[i], t * c.w1[i]);
    return weighted_l2(w, x);
}

namespace detail {

// int_{lo}^{hi} v(t)^p dt/t by per-panel power fit (exact on pure powers),
// plus analytic power tails v ~ v(lo)(t/lo)^{sigma_left} below and
// v ~ v(hi)(t/hi)^{-sigma_right} above.
inline double integrate_p_dlogt(const std::vector<double>& pts, const std::vector<double>& vals, double p,
                                double sigma_left, double sigma_right) {
    double I = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double fa = std::pow(vals[i], p), fb = std::pow(vals[i + 1], p);
        double L = std::log(pts[i + 1] / pts[i]);
        if (L <= 0.0) continue;
        if (fa > 0.0 && fb > 0.0) {
            double kap = std::log(fb / fa) / L;
            I += std::abs(kap) < 1e-9 ? fa * L : fa * (std::exp(kap * L) - 1.0) / kap;
        } else {
            I += 0.5 * (fa + fb) * L;
        }
    }
    if (sigma_left > 0.0) I += std::pow(vals.front(), p) / (sigma_left * p);
    if (sigma_right > 0.0) I += std::pow(vals.back(), p) / (sigma_right * p);
    return I;
}

inline std::vector<double> augmented_log_grid(double lo, double hi, int per_decade, const std::vector<double>& knots) {
    LogGrid base = LogGrid::make(lo, hi, per_decade);
    std::vector<double> pts = base.points;
    for (double k : knots)
        if (k > lo && k < hi) pts.push_back(k);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace detail

inline double interp_scalar_constant(double theta, double p) {
    if (p == infty) return 1.0;
    return std::pow(1.0 / ((1.0 - theta) * p) + 1.0 / (theta * p), 1.0 / p);
}

// (theta,p) real interpolation norm || t^{-theta} K(t,x) ||_{L^p(dt/t)}.
// Quadrature nodes are the log grid augmented with the per-coordinate kinks
// w0_i/w1_i, where the integrand changes its power law.
inline double real_interp_norm(const WeightedCouple& c, const std::vector<double>& x, double theta, double p,
                               int per_decade = 64) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("real_interp_norm: theta must lie in (0,1)");
    if (p < 1.0) throw DomainError("real_interp_norm: p must be >= 1");
    if (weighted_l2(c.w0, x) == 0.0) return 0.0;

    std::vector<double> knots;
    knots.reserve(x.size());
    double kmin = infty, kmax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        double k = std::clamp(c.w0[i] / c.w1[i], 1e-300, 1e300);
        knots.push_back(k);
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    double lo = std::min(1e-6, kmin / 8.0);
    double hi = std::max(1e6, kmax * 8.0);
    auto pts = detail::augmented_log_grid(lo, hi, per_decade, knots);

    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = std::pow(pts[i], -theta) * k_functional(c, x, pts[i]);

    if (p == infty) {
        double best = 0.0;
        for (double v : vals) best = std::max(best, v);
        return best;
    }
    // below lo: K ~ t ||w1 x||, integrand power 1-theta; above hi: K ~ ||w0 x||, power -theta
    return std::pow(detail::integrate_p_dlogt(pts, vals, p, (1.0 - theta) * p, theta * p), 1.0 / p);
}

// resolvent realization || l^{theta m} A^m (l+A)^{-m} x ||_{L^p(dl/l)}
inline double resolvent_interp_norm(const DiagonalModel& model, const std::vector<double>& x, double theta, double p,
                                    int m = 1, int per_decade = 64) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("resolvent_interp_norm: theta in (0,1)");
    if (l2(x) == 0.0) return 0.0;
    auto pts = detail::augmented_log_grid(
        std::min(1e-6, 0.01 / *std::max_element(model.lambda.begin(), model.lambda.end())),
        std::max(1e6, 100.0 * *std::max_element(model.lambda.begin(), model.lambda.end())), per_decade, model.lambda);
    std::vector<double> w(x.size()), vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double l = pts[i];
        for (std::size_t j = 0; j < x.size(); ++j)
            w[j] = std::pow(l, theta * m) * std::pow(model.lambda[j] / (l + model.lambda[j]), m);
        vals[i] = weighted_l2(w, x);
    }
    if (p == infty) {
        double best = 0.0;
        for (double v : vals) best = std::max(best, v);
        return best;
    }
    return std::pow(detail::integrate_p_dlogt(pts, vals, p, theta * m * p, (1.0 - theta) * m * p), 1.0 / p);
}

// semigroup realization || t^{m(1-theta)} A^m T(t) x ||_{L^p(dt/t)}
inline double semigroup_interp_norm(const DiagonalModel& model, const std::vector<double>& x, double theta, double p,
                                    int m = 1, int per_decade = 64) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("semigroup_interp_norm: theta in (0,1)");
    if (l2(x) == 0.0) return 0.0;
    double lmin = *std::min_element(model.lambda.begin(), model.lambda.end());
    double lmax = *std::max_element(model.lambda.begin(), model.lambda.end());
    std::vector<double> inv;
    inv.reserve(model.lambda.size());
    for (double l : model.lambda) inv.push_back(1.0 / l);
    auto pts = detail::augmented_log_grid(std::min(1e-6, 0.01 / lmax), std::max(1e6, 100.0 / lmin), per_decade, inv);
    std::vector<double> w(x.size()), vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double t = pts[i];
        for (std::size_t j = 0; j < x.size(); ++j)
            w[j] = std::pow(t, m * (1.0 - theta)) * std::pow(model.lambda[j], m) * std::exp(-t * model.lambda[j]);
        vals[i] = weighted_l2(w, x);
    }
    if (p == infty) {
        double best = 0.0;
        for (double v : vals) best = std::max(best, v);
        return best;
    }
    // right tail decays exponentially; the grid extends to 100/lambda_min so it is negligible
    return std::pow(detail::integrate_p_dlogt(pts, vals, p, m * (1.0 - theta) * p, 1.0), 1.0 / p);
}

// power-weighted coordinate norm || (w0^{1-theta} w1^theta x) ||_2 (the p = 2
// coordinate realization)
inline double power_weight_norm(const WeightedCouple& c, const std::vector<double>& x, double theta) {
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::pow(c.w0[i], 1.0 - theta) * std::pow(c.w1[i], theta);
    return weighted_l2(w, x);
}

struct EmbeddingChainReport {
    double theta = 0.0;
    double c_into = 0.0;  // max ||x||_{X_j} / ||x||_{(theta,1)}
    double c_outof = 0.0; // max ||x||_{(theta,inf)} / ||x||_{X_j}
    bool finite = true;
};

// (X_k, X_m)_{(j-k)/(m-k),1} -> X_j -> (X_k, X_m)_{(j-k)/(m-k),inf}
inline EmbeddingChainReport check_embedding_chain(const DiagonalModel& model, int k, int j, int m,
                                                  const std::vector<std::vector<double>>& probes) {
    if (!(k < j && j < m)) throw DomainError("check_embedding_chain: need k < j < m");
    EmbeddingChainReport rep;
    rep.theta = static_cast<double>(j - k) / (m - k);
    WeightedCouple c = WeightedCouple::homogeneous(model, k, m);
    std::vector<double> wj(model.lambda.size());
    for (std::size_t i = 0; i < wj.size(); ++i) wj[i] = std::pow(model.lambda[i], j);
    for (const auto& x : probes) {
        double nj = weighted_l2(wj, x);
        if (nj == 0.0) continue;
        double n1 = real_interp_norm(c, x, rep.theta, 1.0);
        double ninf = real_interp_norm(c, x, rep.theta, infty);
        rep.c_into = std::max(rep.c_into, nj / n1);
        rep.c_outof = std::max(rep.c_outof, ninf / nj);
    }
    rep.finite = std::isfinite(rep.c_into) && std::isfinite(rep.c_outof);
    return rep;
}

struct ReiterationReport {
    double ratio_min = infty;
    double ratio_max = 0.0;
};

// ((X_-1, X)_{theta,q}, (X, X_1)_{theta,q})_{1-theta,p} against the direct
// (X_-1, X_1)_{1/2,p} norm. The inner spaces enter through their
// coordinatewise norms c(theta,q) lambda^{theta-1}, c(theta,q) lambda^theta.
inline ReiterationReport check_reiteration(const DiagonalModel& model, double theta, double q, double p,
                                           const std::vector<std::vector<double>>& probes) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("check_reiteration: theta in (0,1)");
    const double cq = interp_scalar_constant(theta, q);
    WeightedCouple outer, direct;
    outer.w0.resize(model.lambda.size());
    outer.w1.resize(model.lambda.size());
    direct.w0.resize(model.lambda.size());
    direct.w1.resize(model.lambda.size());
    for (std::size_t i = 0; i < model.lambda.size(); ++i) {
        outer.w0[i] = cq * std::pow(model.lambda[i], theta - 1.0);
        outer.w1[i] = cq * std::pow(model.lambda[i], theta);
        direct.w0[i] = 1.0 / model.lambda[i];
        direct.w1[i] = model.lambda[i];
    }
    ReiterationReport rep;
    for (const auto& x : probes) {
        double dn = real_interp_norm(direct, x, 0.5, p);
        if (dn == 0.0) continue;
        double in = real_interp_norm(outer, x, 1.0 - theta, p);
        rep.ratio_min = std::min(rep.ratio_min, in / dn);
        rep.ratio_max = std::max(rep.ratio_max, in / dn);
    }
    return rep;
}

} // namespace katolab
