#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "katolab/lp_decomposition.hpp"
#include "katolab/multiplier.hpp"
#include "katolab/space_tag.hpp"
#include "katolab/spectral_field.hpp"

namespace katolab {

// Riemann-sum L^q norm over the grid samples; q = inf is the sample max.
inline double lebesgue_norm(const SpectralField& f, double q) {
    if (q < 1.0) throw DomainError("lebesgue_norm: q must be >= 1");
    auto mag = f.pointwise_magnitude();
    if (q == infty) return *std::max_element(mag.begin(), mag.end());
    const double v = f.grid().cell_volume();
    double s = 0.0;
    for (double m : mag) s += std::pow(m, q);
    return std::pow(v * s, 1.0 / q);
}

// Weak L^q norm from the decreasing rearrangement of the samples:
// max_k f*_k (k v)^{1/q}.
inline double weak_lebesgue_norm(const SpectralField& f, double q) {
    if (q < 1.0) throw DomainError("weak_lebesgue_norm: q must be >= 1");
    if (q == infty) return lebesgue_norm(f, infty);
    auto mag = f.pointwise_magnitude();
    std::sort(mag.begin(), mag.end(), std::greater<>());
    const double v = f.grid().cell_volume();
    double best = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k)
        best = std::max(best, mag[k] * std::pow(static_cast<double>(k + 1) * v, 1.0 / q));
    return best;
}

struct InnerNorm {
    bool weak = false;
    double q = 2.0;
    double operator()(const SpectralField& f) const { return weak ? weak_lebesgue_norm(f, q) : lebesgue_norm(f, q); }
};

// l^p aggregation helper
inline double lp_aggregate(const std::vector<double>& terms, double p) {
    if (p == infty) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    for (double t : terms) s += std::pow(t, p);
    return std::pow(s, 1.0 / p);
}

// Besov norm || (2^{js} ||Delta_j f||_inner)_j ||_{l^p}. Homogeneous mode
// requires a mean-zero field; inhomogeneous mode adds the base-block norm.
inline double besov_norm(const SpectralField& f, double s, InnerNorm inner, double p, bool homogeneous) {
    if (p < 1.0) throw DomainError("besov_norm: p must be >= 1");
    LPDecomposition lp = littlewood_paley(f, homogeneous);
    std::vector<double> terms;
    terms.reserve(lp.blocks.size());
    for (const auto& [j, block] : lp.blocks) terms.push_back(std::pow(2.0, j * s) * inner(block));
    double val = lp_aggregate(terms, p);
    if (!homogeneous) val += inner(lp.base);
    return val;
}

inline double hoelder_norm(const SpectralField& f, double eps) {
    return besov_norm(f, eps, InnerNorm{false, infty}, infty, false);
}

// Morrey norm: discrete sup over grid-point centers and dyadic radii
// r = 2pi 2^{-m} of r^lambda (ball average of |f|^q)^{1/q}. Ball sums are
// circular convolutions with the ball indicator, evaluated by FFT.
inline double morrey_norm(const SpectralField& f, double q, double lambda) {
    const Grid& g = f.grid();
    const int n = g.dim();
    if (q < 1.0 || q == infty) throw DomainError("morrey_norm: q must be finite and >= 1");
    if (lambda <= 0.0 || lambda > n / q + 1e-12) throw DomainError("morrey_norm: lambda must lie in (0, n/q]");

    auto mag = f.pointwise_magnitude();
    const std::size_t m = g.size();
    std::vector<Complex> pw(m), pw_hat(m), ind(m), ind_hat(m), ball(m);
    for (std::size_t i = 0; i < m; ++i) pw[i] = Complex{std::pow(mag[i], q), 0.0};
    Fft::forward(g, pw.data(), pw_hat.data());

    const int mmax = static_cast<int>(std::round(std::log2(static_cast<double>(g.modes()))));
    const double h = g.h();
    double best = 0.0;
    for (int level = 0; level <= mmax; ++level) {
        const double r = two_pi * std::pow(2.0, -level);
        // periodic ball indicator around the origin
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            auto k = g.wavevector(i); // integer offsets in [-N/2+1, N/2]
            double d2 = 0.0;
            for (int d = 0; d < n; ++d) d2 += static_cast<double>(k[d]) * k[d] * h * h;
            bool in = d2 <= r * r * (1.0 + 1e-12);
            ind[i] = Complex{in ? 1.0 : 0.0, 0.0};
            if (in) ++count;
        }
        Fft::forward(g, ind.data(), ind_hat.data());
        for (std::size_t i = 0; i < m; ++i) ind_hat[i] *= pw_hat[i] * static_cast<double>(m);
        Fft::backward(g, ind_hat.data(), ball.data());
        double top = 0.0;
        for (std::size_t i = 0; i < m; ++i) top = std::max(top, ball[i].real());
        top = std::max(top, 0.0) / static_cast<double>(count);
        best = std::max(best, std::pow(r, lambda) * std::pow(top, 1.0 / q));
    }
    return best;
}

// dispatcher for SpaceTag-driven norms
inline double space_norm(const SpectralField& f, const SpaceTag& tag) {
    using K = SpaceTag::Kind;
    switch (tag.kind) {
        case K::Lq: return lebesgue_norm(f, tag.q);
        case K::WeakLq: return weak_lebesgue_norm(f, tag.q);
        case K::Besov: return besov_norm(f, tag.s, InnerNorm{false, tag.q}, tag.p, false);
        case K::HomBesov: return besov_norm(f, tag.s, InnerNorm{false, tag.q}, tag.p, true);
        case K::WeakBesov: return besov_norm(f, tag.s, InnerNorm{true, tag.q}, tag.p, false);
        case K::HomWeakBesov: return besov_norm(f, tag.s, InnerNorm{true, tag.q}, tag.p, true);
        case K::Hoelder: return hoelder_norm(f, tag.eps);
        case K::Morrey: return morrey_norm(f, tag.q, tag.lambda);
        case K::HomSobolev: return lebesgue_norm(fractional_laplacian(f, tag.s / 2.0), tag.q);
        case K::HomWeakSobolev: return weak_lebesgue_norm(fractional_laplacian(f, tag.s / 2.0), tag.q);
    }
    throw DomainError("space_norm: unknown tag");
}

} // namespace katolab
