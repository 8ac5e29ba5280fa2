#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "katolab/errors.hpp"

namespace katolab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Uniform grid on the periodic torus [0,2pi)^n, n in {2,3}, N modes per
// dimension. Wavenumbers follow the FFT layout: index i maps to the
// frequency i for i <= N/2 and i-N otherwise, so k ranges over
// {-N/2+1, ..., N/2} in each dimension.
class Grid {
  public:
    Grid(int dim, int modes) : n_(dim), N_(modes) {
        if (dim != 2 && dim != 3) throw GridError("Grid: dimension must be 2 or 3");
        if (modes < 8 || modes % 2 != 0) throw GridError("Grid: N must be even and >= 8");
    }

    int dim() const { return n_; }
    int modes() const { return N_; }
    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < n_; ++d) s *= static_cast<std::size_t>(N_);
        return s;
    }
    // physical mesh width and cell volume
    double h() const { return two_pi / N_; }
    double cell_volume() const { return std::pow(h(), n_); }

    int freq(int index) const { return index <= N_ / 2 ? index : index - N_; }
    int index_of_freq(int k) const { return k >= 0 ? k : k + N_; }

    // decode flat row-major index into integer wavenumbers
    std::array<int, 3> wavevector(std::size_t flat) const {
        std::array<int, 3> k{0, 0, 0};
        for (int d = n_ - 1; d >= 0; --d) {
            k[d] = freq(static_cast<int>(flat % N_));
            flat /= N_;
        }
        return k;
    }

    std::size_t flat_of_wavevector(const std::array<int, 3>& k) const {
        std::size_t f = 0;
        for (int d = 0; d < n_; ++d) f = f * N_ + index_of_freq(k[d]);
        return f;
    }

    double k_squared(std::size_t flat) const {
        auto k = wavevector(flat);
        double s = 0.0;
        for (int d = 0; d < n_; ++d) s += static_cast<double>(k[d]) * k[d];
        return s;
    }

    bool operator==(const Grid& o) const { return n_ == o.n_ && N_ == o.N_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

  private:
    int n_;
    int N_;
};

} // namespace katolab
