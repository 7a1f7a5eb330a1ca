#pragma once

#include <complex>
#include <vector>

namespace pfans {

// Thin FFTW wrappers. Plan creation is serialized internally; the transforms
// themselves are safe to run from multiple threads on distinct buffers.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

} // namespace pfans
