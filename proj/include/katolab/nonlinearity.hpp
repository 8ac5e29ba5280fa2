#pragma once

#include <vector>

#include "katolab/multiplier.hpp"
#include "katolab/spectral_field.hpp"

namespace katolab {

// 2/3-rule mask: a mode survives iff |k_d| < N/3 in every dimension.
inline bool dealias_keep(const Grid& g, std::size_t flat) {
    auto k = g.wavevector(flat);
    const double cut = g.modes() / 3.0;
    for (int d = 0; d < g.dim(); ++d)
        if (std::abs(k[d]) >= cut) return false;
    return true;
}

inline void dealias(SpectralField& f) {
    const std::size_t m = f.modes();
    for (int j = 0; j < f.components(); ++j) {
        auto& c = f.component(j);
        for (std::size_t i = 0; i < m; ++i)
            if (!dealias_keep(f.grid(), i)) c[i] = Complex{0.0, 0.0};
    }
}

// div(u (x) v), component i = sum_j d_j (u_i v_j). Products are formed in
// physical space on 2/3-truncated inputs, the divergence spectrally.
inline SpectralField divergence_of_tensor_product(const SpectralField& u, const SpectralField& v) {
    u.check_compatible(v);
    const Grid& g = u.grid();
    const int n = g.dim();
    if (u.components() != n) throw GridError("divergence_of_tensor_product: needs vector fields");

    SpectralField ut = u, vt = v;
    dealias(ut);
    dealias(vt);

    std::vector<std::vector<Complex>> us(n), vs(n);
    for (int d = 0; d < n; ++d) {
        us[d] = ut.samples(d);
        vs[d] = vt.samples(d);
    }

    SpectralField out(g, n);
    const std::size_t m = g.size();
    std::vector<Complex> prod(m), prod_hat(m);
    for (int i = 0; i < n; ++i) {
        auto& ci = out.component(i);
        for (int j = 0; j < n; ++j) {
            for (std::size_t x = 0; x < m; ++x) prod[x] = us[i][x] * vs[j][x];
            Fft::forward(g, prod.data(), prod_hat.data());
            for (std::size_t kk = 1; kk < m; ++kk) {
                auto k = g.wavevector(kk);
                ci[kk] += Complex{0.0, static_cast<double>(k[j])} * prod_hat[kk];
            }
        }
    }
    dealias(out);
    out.set_mean_zero(); // a divergence has no mean
    return out;
}

// F(u,v) = P div(u (x) v), the projected quadratic term
inline SpectralField nonlinearity(const SpectralField& u, const SpectralField& v) {
    return leray_project(divergence_of_tensor_product(u, v));
}

} // namespace katolab
