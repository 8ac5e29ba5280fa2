#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "katolab/errors.hpp"
#include "katolab/fft.hpp"
#include "katolab/grid.hpp"
#include "katolab/rng.hpp"

namespace katolab {

using Complex = std::complex<double>;

// Real vector field on the torus stored as Fourier coefficients
// u_j(x) = sum_k c_j(k) e^{i k.x}. Realness is maintained through Hermitian
// symmetry c_j(-k) = conj(c_j(k)).
class SpectralField {
  public:
    SpectralField(Grid grid, int components)
        : grid_(grid), comps_(static_cast<std::size_t>(components), std::vector<Complex>(grid.size(), Complex{0.0, 0.0})) {
        if (components < 1) throw GridError("SpectralField: need at least one component");
    }

    static SpectralField vector_field(Grid grid) { return SpectralField(grid, grid.dim()); }

    const Grid& grid() const { return grid_; }
    int components() const { return static_cast<int>(comps_.size()); }
    std::size_t modes() const { return grid_.size(); }

    std::vector<Complex>& component(int j) { return comps_[static_cast<std::size_t>(j)]; }
    const std::vector<Complex>& component(int j) const { return comps_[static_cast<std::size_t>(j)]; }

    Complex& at(int j, const std::array<int, 3>& k) { return comps_[static_cast<std::size_t>(j)][grid_.flat_of_wavevector(k)]; }
    Complex at(int j, const std::array<int, 3>& k) const { return comps_[static_cast<std::size_t>(j)][grid_.flat_of_wavevector(k)]; }

    // Projection onto the subspace of real-valued fields:
    // c(k) <- (c(k) + conj(c(-k)))/2. Nyquist modes pair with themselves
    // and end up real.
    void hermitize() {
        const std::size_t m = modes();
        for (auto& c : comps_) {
            std::vector<Complex> out(m);
            for (std::size_t i = 0; i < m; ++i) {
                auto k = grid_.wavevector(i);
                std::array<int, 3> mk{0, 0, 0};
                for (int d = 0; d < grid_.dim(); ++d) {
                    int neg = -k[d];
                    // -N/2 aliases back to +N/2
                    if (neg == -grid_.modes() / 2) neg = grid_.modes() / 2;
                    mk[d] = neg;
                }
                out[i] = 0.5 * (c[i] + std::conj(c[grid_.flat_of_wavevector(mk)]));
            }
            c = std::move(out);
        }
    }

    void set_mean_zero() {
        for (auto& c : comps_) c[0] = Complex{0.0, 0.0};
    }

    Complex mean(int j) const { return comps_[static_cast<std::size_t>(j)][0]; }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& c : comps_)
            for (const auto& z : c) m = std::max(m, std::abs(z));
        return m;
    }

    bool has_zero_mean(double rel_tol = 1e-12) const {
        double scale = max_abs_coefficient();
        for (const auto& c : comps_)
            if (std::abs(c[0]) > rel_tol * std::max(scale, 1e-300)) return false;
        return true;
    }

    // relative divergence max_k |k.c(k)| / max_k |k||c(k)|
    double divergence_defect() const {
        if (components() != grid_.dim()) return 0.0;
        const std::size_t m = modes();
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            auto k = grid_.wavevector(i);
            Complex div{0.0, 0.0};
            double amp = 0.0, kabs = 0.0;
            for (int d = 0; d < grid_.dim(); ++d) {
                div += static_cast<double>(k[d]) * comps_[static_cast<std::size_t>(d)][i];
                amp += std::norm(comps_[static_cast<std::size_t>(d)][i]);
                kabs += static_cast<double>(k[d]) * k[d];
            }
            worst = std::max(worst, std::abs(div));
            scale = std::max(scale, std::sqrt(kabs * amp));
        }
        return scale > 0.0 ? worst / scale : 0.0;
    }

    bool is_divergence_free(double rel_tol = 1e-12) const { return divergence_defect() <= rel_tol; }

    // L2(T^n) norm over all components (Parseval: (2pi)^{n/2} l2 of coefficients)
    double l2_norm() const {
        double s = 0.0;
        for (const auto& c : comps_)
            for (const auto& z : c) s += std::norm(z);
        return std::sqrt(s * std::pow(two_pi, grid_.dim()));
    }

    double l2_inner(const SpectralField& o) const {
        double s = 0.0;
        for (int j = 0; j < components(); ++j) {
            const auto& a = component(j);
            const auto& b = o.component(j);
            for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
        }
        return s * std::pow(two_pi, grid_.dim());
    }

    // physical samples of component j on the uniform grid (row-major)
    std::vector<Complex> samples(int j) const {
        std::vector<Complex> out(modes());
        Fft::backward(grid_, component(j).data(), out.data());
        return out;
    }

    void set_from_samples(int j, const std::vector<Complex>& phys) {
        if (phys.size() != modes()) throw GridError("set_from_samples: size mismatch");
        Fft::forward(grid_, phys.data(), component(j).data());
    }

    // pointwise Euclidean magnitude of the vector field at the grid points
    std::vector<double> pointwise_magnitude() const {
        std::vector<double> mag(modes(), 0.0);
        for (int j = 0; j < components(); ++j) {
            auto s = samples(j);
            for (std::size_t i = 0; i < s.size(); ++i) mag[i] += std::norm(s[i]);
        }
        for (auto& v : mag) v = std::sqrt(v);
        return mag;
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_compatible(o);
        for (int j = 0; j < components(); ++j) {
            auto& a = component(j);
            const auto& b = o.component(j);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        }
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_compatible(o);
        for (int j = 0; j < components(); ++j) {
            auto& a = component(j);
            const auto& b = o.component(j);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        }
        return *this;
    }
    SpectralField& operator*=(double c) {
        for (auto& comp : comps_)
            for (auto& z : comp) z *= c;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double c, SpectralField a) { return a *= c; }

    void check_compatible(const SpectralField& o) const {
        if (grid_ != o.grid_ || components() != o.components())
            throw GridError("SpectralField: grid/component mismatch");
    }

    // --- flat binary container ---------------------------------------------
    // header: three little-endian uint32 {n, N, component count}, then for
    // each component the complex coefficients in row-major wavenumber order
    // as little-endian doubles (re, im).
    void save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot open for writing: " + path);
        std::uint32_t hdr[3] = {static_cast<std::uint32_t>(grid_.dim()),
                                static_cast<std::uint32_t>(grid_.modes()),
                                static_cast<std::uint32_t>(components())};
        f.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
        for (const auto& c : comps_)
            f.write(reinterpret_cast<const char*>(c.data()),
                    static_cast<std::streamsize>(c.size() * sizeof(Complex)));
        if (!f) throw IoError("write failed: " + path);
    }

    static SpectralField load(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot open for reading: " + path);
        std::uint32_t hdr[3];
        f.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
        if (!f) throw IoError("truncated header: " + path);
        SpectralField out(Grid(static_cast<int>(hdr[0]), static_cast<int>(hdr[1])), static_cast<int>(hdr[2]));
        for (int j = 0; j < out.components(); ++j) {
            auto& c = out.component(j);
            f.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(Complex)));
        }
        if (!f) throw IoError("truncated data: " + path);
        return out;
    }

  private:
    Grid grid_;
    std::vector<std::vector<Complex>> comps_;
};

// Band-limited random real field with coefficient decay |k|^{-decay},
// mean-zero. Deterministic in the seed.
inline SpectralField random_field(const Grid& g, int components, Rng& rng, int kmax, double decay = 1.0) {
    SpectralField f(g, components);
    const std::size_t m = g.size();
    for (int j = 0; j < components; ++j) {
        auto& c = f.component(j);
        for (std::size_t i = 1; i < m; ++i) {
            auto k = g.wavevector(i);
            double k2 = 0.0;
            bool in_band = true;
            for (int d = 0; d < g.dim(); ++d) {
                if (std::abs(k[d]) > kmax) in_band = false;
                k2 += static_cast<double>(k[d]) * k[d];
            }
            if (!in_band || k2 == 0.0) continue;
            double amp = std::pow(k2, -decay / 2.0);
            c[i] = Complex{rng.normal(), rng.normal()} * amp;
        }
    }
    f.hermitize();
    f.set_mean_zero();
    return f;
}

} // namespace katolab
