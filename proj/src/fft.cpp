#include "pfans/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace pfans {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& x,
                                            int sign) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> in(x), out(x.size());
    if (n == 0) return out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    if (sign == FFTW_BACKWARD) {
        const double scale = 1.0 / n;
        for (auto& v : out) v *= scale;
    }
    return out;
}
} // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
    return transform(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
    return transform(x, FFTW_BACKWARD);
}

} // namespace pfans
