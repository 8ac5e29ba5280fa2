#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "katolab/grid.hpp"

namespace katolab {

// Thin wrapper around FFTW complex transforms. Plans are cached behind a
// mutex and executed via the new-array interface, so transforms are safe to
// call concurrently.
class Fft {
  public:
    // spectral -> physical samples, unnormalized (coefficients are mode
    // amplitudes: f(x) = sum_k c_k e^{i k.x})
    static void backward(const Grid& g, const std::complex<double>* in, std::complex<double>* out) {
        execute(g, in, out, FFTW_BACKWARD);
    }

    // physical samples -> spectral coefficients (normalized by 1/N^n)
    static void forward(const Grid& g, const std::complex<double>* in, std::complex<double>* out) {
        execute(g, in, out, FFTW_FORWARD);
        const double scale = 1.0 / static_cast<double>(g.size());
        const std::size_t m = g.size();
        for (std::size_t i = 0; i < m; ++i) out[i] *= scale;
    }

  private:
    static void execute(const Grid& g, const std::complex<double>* in, std::complex<double>* out, int sign) {
        fftw_plan plan = get_plan(g, sign);
        // new-array execute; FFTW does not modify the input for c2c plans
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

    static fftw_plan get_plan(const Grid& g, int sign) {
        static std::mutex mtx;
        static std::map<std::tuple<int, int, int>, fftw_plan> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_tuple(g.dim(), g.modes(), sign);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<std::complex<double>> buf(g.size());
        std::vector<int> dims(g.dim(), g.modes());
        fftw_plan p = fftw_plan_dft(g.dim(), dims.data(),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    sign, FFTW_ESTIMATE);
        cache.emplace(key, p);
        return p;
    }
};

} // namespace katolab
