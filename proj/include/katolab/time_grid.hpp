#pragma once

#include <cmath>
#include <vector>

#include "katolab/errors.hpp"
#include "katolab/space_tag.hpp"

namespace katolab {

// Graded time grid t_j = tau (j/M)^r, j = 0..M. The grading clusters nodes
// at t = 0 where the weight t^alpha and the kernel (t-s)^{-gamma} are
// singular. Node t_0 = 0 is excluded from all norm evaluations.
struct TimeGrid {
    double tau;
    int M;
    double r;

    TimeGrid(double tau_, int M_, double r_ = 2.0) : tau(tau_), M(M_), r(r_) {
        if (tau <= 0.0) throw DomainError("TimeGrid: tau must be > 0");
        if (M < 2) throw DomainError("TimeGrid: need at least 2 nodes");
        if (r < 1.0) throw DomainError("TimeGrid: grading r must be >= 1");
    }

    double node(int j) const { return tau * std::pow(static_cast<double>(j) / M, r); }

    std::vector<double> nodes() const {
        std::vector<double> t(M + 1);
        for (int j = 0; j <= M; ++j) t[j] = node(j);
        return t;
    }
};

// || t^alpha g ||_{L^p(0,tau)} from node samples g(t_1..t_M). Quadrature in
// the transformed variable sigma = (t/tau)^{1/r}: composite Simpson on the
// uniform sigma mesh plus a power rule on the first panel carrying the
// known endpoint exponent r(alpha p + 1) - 1. No sign restriction on alpha;
// the solver-facing wrapper below enforces alpha >= 0.
inline double weighted_lp_time_norm(const std::vector<double>& values, double p, double alpha, const TimeGrid& g) {
    if (static_cast<int>(values.size()) != g.M)
        throw DomainError("weighted_lp_time_norm: need one value per node t_1..t_M");
    if (p < 1.0) throw DomainError("weighted_lp_time_norm: p must be >= 1");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("weighted_lp_time_norm: values must be finite");

    if (p == infty) {
        double best = 0.0;
        for (int j = 1; j <= g.M; ++j) best = std::max(best, std::pow(g.node(j), alpha) * values[j - 1]);
        return best;
    }

    const int M = g.M;
    std::vector<double> H(M);
    for (int j = 1; j <= M; ++j) {
        double sig = static_cast<double>(j) / M;
        double t = g.node(j);
        H[j - 1] = std::pow(std::pow(t, alpha) * values[j - 1], p) * g.tau * g.r * std::pow(sig, g.r - 1.0);
    }
    const double kappa0 = g.r * (alpha * p + 1.0) - 1.0;
    const double h = 1.0 / M;
    double I = H[0] * h / (kappa0 + 1.0);
    int i = 0;
    const int panels = M - 1;
    while (i + 2 <= panels) {
        I += h / 3.0 * (H[i] + 4.0 * H[i + 1] + H[i + 2]);
        i += 2;
    }
    if (i < panels) I += h / 2.0 * (H[i] + H[i + 1]);
    return std::pow(std::max(I, 0.0), 1.0 / p);
}

// Weighted time norm L^p_alpha((0,tau), Z). alpha >= 0 on this path; the
// fixed-point space additionally requires alpha + 1/p in (0, 1/2), which is
// validated by the solver configuration.
struct WeightedTimeNorm {
    double p;
    double alpha;
    SpaceTag space;

    WeightedTimeNorm(double p_, double alpha_, SpaceTag space_) : p(p_), alpha(alpha_), space(space_) {
        if (p < 1.0) throw DomainError("WeightedTimeNorm: p must be >= 1");
        if (alpha < 0.0) throw DomainError("WeightedTimeNorm: alpha must be >= 0");
    }
};

inline double weighted_time_norm(const std::vector<double>& values, const WeightedTimeNorm& norm, const TimeGrid& g) {
    for (double v : values)
        if (v < 0.0) throw DomainError("weighted_time_norm: values must be non-negative");
    return weighted_lp_time_norm(values, norm.p, norm.alpha, g);
}

} // namespace katolab
