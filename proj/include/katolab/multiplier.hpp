#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "katolab/spectral_field.hpp"

namespace katolab {

enum class ZeroModeRule { identity, zero, reject };

// Scalar Fourier multiplier m(k). The action at k = 0 is never implicit:
// 'identity' keeps the mean, 'zero' kills it, 'reject' demands a mean-zero
// input. Matrix-valued symbols (the Leray projection) have their own
// dedicated operation below.
struct Multiplier {
    std::function<Complex(const std::array<int, 3>&, double k2)> symbol;
    ZeroModeRule zero_mode = ZeroModeRule::identity;
};

inline SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
    SpectralField out = f;
    const Grid& g = f.grid();
    const std::size_t n = f.modes();
    const double mean_tol = 1e-12 * std::max(f.max_abs_coefficient(), 1e-300);
    for (int j = 0; j < f.components(); ++j) {
        auto& c = out.component(j);
        switch (m.zero_mode) {
            case ZeroModeRule::identity: break;
            case ZeroModeRule::zero: c[0] = Complex{0.0, 0.0}; break;
            case ZeroModeRule::reject:
                if (std::abs(c[0]) > mean_tol)
                    throw ZeroModeError("apply_multiplier: zero-mode rule 'reject' but mean is nonzero");
                c[0] = Complex{0.0, 0.0};
                break;
        }
        for (std::size_t i = 1; i < n; ++i) c[i] *= m.symbol(g.wavevector(i), g.k_squared(i));
    }
    return out;
}

// heat semigroup T(t) = e^{t Delta}, symbol e^{-t|k|^2}; an optional shift nu
// turns the generator into -Delta + nu (used for finite-horizon runs with a
// boundedly invertible generator).
inline SpectralField heat_semigroup(const SpectralField& f, double t, double shift_nu = 0.0) {
    if (t < 0.0) throw DomainError("heat_semigroup: t must be >= 0");
    Multiplier m{[t, shift_nu](const std::array<int, 3>&, double k2) {
                     return Complex{std::exp(-t * (k2 + shift_nu)), 0.0};
                 },
                 shift_nu == 0.0 ? ZeroModeRule::identity : ZeroModeRule::zero};
    if (shift_nu != 0.0) {
        // mean mode evolves with rate nu
        SpectralField out = apply_multiplier(f, m);
        for (int j = 0; j < f.components(); ++j) out.component(j)[0] = f.component(j)[0] * std::exp(-t * shift_nu);
        return out;
    }
    return apply_multiplier(f, m);
}

// (-Delta)^s with symbol |k|^{2s}. Negative powers demand mean-zero input.
inline SpectralField fractional_laplacian(const SpectralField& f, double s) {
    if (s == 0.0) return f;
    Multiplier m{[s](const std::array<int, 3>&, double k2) { return Complex{std::pow(k2, s), 0.0}; },
                 s > 0.0 ? ZeroModeRule::zero : ZeroModeRule::reject};
    return apply_multiplier(f, m);
}

// Leray/Helmholtz projection, symbol P(k) = I - k k^T/|k|^2, P(0) = I.
inline SpectralField leray_project(const SpectralField& f) {
    const Grid& g = f.grid();
    if (f.components() != g.dim()) throw GridError("leray_project: needs a full vector field");
    SpectralField out = f;
    const std::size_t m = f.modes();
    const int n = g.dim();
    for (std::size_t i = 1; i < m; ++i) {
        auto k = g.wavevector(i);
        double k2 = g.k_squared(i);
        Complex kdotu{0.0, 0.0};
        for (int d = 0; d < n; ++d) kdotu += static_cast<double>(k[d]) * f.component(d)[i];
        Complex scale = kdotu / k2;
        for (int d = 0; d < n; ++d) out.component(d)[i] -= static_cast<double>(k[d]) * scale;
    }
    return out;
}

} // namespace katolab
