#pragma once

#include <cmath>
#include <vector>

#include "katolab/multiplier.hpp"
#include "katolab/rng.hpp"
#include "katolab/spectral_field.hpp"

namespace katolab {

// classic 2D vortex (sin x1 cos x2, -cos x1 sin x2); in 3D embedded with a
// zero third component. Note its projected quadratic term vanishes: the
// streamfunction is a Laplacian eigenfunction, so this datum evolves by the
// heat flow alone.
inline SpectralField taylor_green(const Grid& g) {
    SpectralField f(g, g.dim());
    const int N = g.modes();
    const std::size_t m = g.size();
    std::vector<Complex> s1(m), s2(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t rest = i;
        int idx[3] = {0, 0, 0};
        for (int d = g.dim() - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rest % N);
            rest /= N;
        }
        double x1 = two_pi * idx[0] / N, x2 = two_pi * idx[1] / N;
        s1[i] = Complex{std::sin(x1) * std::cos(x2), 0.0};
        s2[i] = Complex{-std::cos(x1) * std::sin(x2), 0.0};
    }
    f.set_from_samples(0, s1);
    f.set_from_samples(1, s2);
    f.hermitize();
    f.set_mean_zero();
    return f;
}

// divergence-free 2D field with a genuinely interacting quadratic term:
// streamfunction cos x1 cos x2 + 0.7 cos(2 x1) mixes Laplacian eigenvalues
inline SpectralField mixed_vortex(const Grid& g) {
    SpectralField f(g, g.dim());
    const int N = g.modes();
    const std::size_t m = g.size();
    std::vector<Complex> s1(m), s2(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t rest = i;
        int idx[3] = {0, 0, 0};
        for (int d = g.dim() - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rest % N);
            rest /= N;
        }
        double x1 = two_pi * idx[0] / N, x2 = two_pi * idx[1] / N;
        s1[i] = Complex{-std::cos(x1) * std::sin(x2), 0.0};
        s2[i] = Complex{std::sin(x1) * std::cos(x2) + 1.4 * std::sin(2.0 * x1), 0.0};
    }
    f.set_from_samples(0, s1);
    f.set_from_samples(1, s2);
    f.hermitize();
    f.set_mean_zero();
    return f;
}

inline SpectralField random_divergence_free(const Grid& g, Rng& rng, int kmax, double decay = 1.5) {
    SpectralField f = leray_project(random_field(g, g.dim(), rng, kmax, decay));
    f.set_mean_zero();
    return f;
}

// real single mode sin(k.x) in one component
inline SpectralField single_mode(const Grid& g, const std::array<int, 3>& k, int component) {
    SpectralField f(g, g.dim());
    std::array<int, 3> mk{};
    for (int d = 0; d < g.dim(); ++d) mk[d] = -k[d];
    f.at(component, k) = Complex{0.0, -0.5};
    f.at(component, mk) = Complex{0.0, 0.5};
    return f;
}

// gradient of sin(x_axis): (a field in the kernel of the Leray projection)
inline SpectralField gradient_probe(const Grid& g, int axis = 0) {
    SpectralField f(g, g.dim());
    std::array<int, 3> k{0, 0, 0}, mk{0, 0, 0};
    k[axis] = 1;
    mk[axis] = -1;
    // grad sin = cos: coefficients 1/2 at +-k
    f.at(axis, k) = Complex{0.5, 0.0};
    f.at(axis, mk) = Complex{0.5, 0.0};
    return f;
}

// --- diagonal-model probe vectors ---

inline std::vector<std::vector<double>> diagonal_probes(int dim, Rng& rng, int n_random = 8) {
    std::vector<std::vector<double>> probes;
    // a spread of basis vectors
    for (int i = 0; i < dim; i += std::max(1, dim / 8)) {
        std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        probes.push_back(std::move(e));
    }
    {
        std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
        e.back() = 1.0;
        probes.push_back(std::move(e));
    }
    for (int r = 0; r < n_random; ++r) {
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (auto& v : x) v = rng.normal();
        probes.push_back(std::move(x));
    }
    return probes;
}

} // namespace katolab
