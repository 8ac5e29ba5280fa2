#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "katolab/errors.hpp"
#include "katolab/rng.hpp"

namespace katolab {

// Finite diagonal sectorial model: A = diag(lambda_i) with lambda_i > 0,
// observation C = diag(c_i), control B = diag(b_i). X is the l^2 space;
// homogeneous spaces X_k carry the norm ||lambda^k x||.
struct DiagonalModel {
    std::vector<double> lambda;
    std::vector<double> c_weights;
    std::vector<double> b_weights;

    int dim() const { return static_cast<int>(lambda.size()); }

    void validate() const {
        if (lambda.empty()) throw DomainError("DiagonalModel: dimension must be >= 1");
        for (double l : lambda)
            if (!(l > 0.0)) throw DomainError("DiagonalModel: spectrum must be positive");
    }

    static DiagonalModel geometric(int d, double lambda_min, double lambda_max) {
        DiagonalModel m;
        m.lambda.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            m.lambda[static_cast<std::size_t>(i)] =
                d == 1 ? lambda_min : lambda_min * std::pow(lambda_max / lambda_min, static_cast<double>(i) / (d - 1));
        m.c_weights.assign(static_cast<std::size_t>(d), 1.0);
        m.b_weights.assign(static_cast<std::size_t>(d), 1.0);
        return m;
    }

    static DiagonalModel random(int d, double lambda_min, double lambda_max, Rng& rng) {
        DiagonalModel m;
        m.lambda.resize(static_cast<std::size_t>(d));
        for (auto& l : m.lambda) l = lambda_min * std::pow(lambda_max / lambda_min, rng.uniform());
        std::sort(m.lambda.begin(), m.lambda.end());
        m.c_weights.assign(static_cast<std::size_t>(d), 1.0);
        m.b_weights.assign(static_cast<std::size_t>(d), 1.0);
        return m;
    }

    // C = A^theta (the exponent-critical observation family)
    DiagonalModel& with_observation_power(double theta) {
        c_weights.resize(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) c_weights[i] = std::pow(lambda[i], theta);
        return *this;
    }
    // B = A^theta
    DiagonalModel& with_control_power(double theta) {
        b_weights.resize(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) b_weights[i] = std::pow(lambda[i], theta);
        return *this;
    }
};

// overflow-safe weighted l2: || (w_i x_i) ||_2
inline double weighted_l2(const std::vector<double>& w, const std::vector<double>& x) {
    double scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) scale = std::max(scale, std::abs(w[i] * x[i]));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = w[i] * x[i] / scale;
        s += v * v;
    }
    return scale * std::sqrt(s);
}

inline double l2(const std::vector<double>& x) {
    std::vector<double> ones(x.size(), 1.0);
    return weighted_l2(ones, x);
}

// Couple (l^2(w0), l^2(w1)); realizes (X_k, X_m)_hom via w = lambda^k, lambda^m.
struct WeightedCouple {
    std::vector<double> w0;
    std::vector<double> w1;

    static WeightedCouple homogeneous(const DiagonalModel& m, int k, int mm) {
        WeightedCouple c;
        c.w0.resize(m.lambda.size());
        c.w1.resize(m.lambda.size());
        for (std::size_t i = 0; i < m.lambda.size(); ++i) {
            c.w0[i] = std::pow(m.lambda[i], k);
            c.w1[i] = std::pow(m.lambda[i], mm);
        }
        return c;
    }
};

// log-spaced evaluation grid
struct LogGrid {
    std::vector<double> points;

    static LogGrid make(double lo, double hi, int per_decade) {
        if (!(lo > 0.0 && hi > lo)) throw DomainError("LogGrid: need 0 < lo < hi");
        int n = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)) + 1;
        LogGrid g;
        g.points.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            g.points[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        return g;
    }

    // default per the measurement protocol: 64 points per decade on
    // [1e-4, 1e4], extended when the spectrum needs more room
    static LogGrid for_spectrum(const std::vector<double>& lambda, int per_decade = 64,
                                double lo0 = 1e-4, double hi0 = 1e4) {
        double lmin = *std::min_element(lambda.begin(), lambda.end());
        double lmax = *std::max_element(lambda.begin(), lambda.end());
        double lo = std::min(lo0, 0.01 / lmax);
        double hi = std::max(hi0, 100.0 / lmin);
        return make(lo, hi, per_decade);
    }
};

} // namespace katolab
