#pragma once

#include <complex>
#include <vector>

namespace pfans {

using cplx = std::complex<double>;

// Uniformly sampled real-valued signal (passband / electrical domain).
struct RealWaveform {
    std::vector<double> samples;
    double rate_hz = 0.0;
};

// Uniformly sampled complex-baseband signal.
struct ComplexWaveform {
    std::vector<cplx> samples;
    double rate_hz = 0.0;
};

} // namespace pfans
