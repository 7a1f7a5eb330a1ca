#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pfans/waveform.hpp"

namespace pfans {

// L/M rational approximation of a positive real ratio (continued fractions).
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;
};
Rational approximate_ratio(double x, std::int64_t max_den = 1 << 20);

// Kaiser-window lowpass design. cutoff_norm is in cycles/sample (0..0.5).
std::vector<double> kaiser_lowpass(double cutoff_norm, double transition_norm,
                                   double stopband_db);

// Linear convolution trimmed to the input length with the (odd-length) filter's
// integer group delay removed.
std::vector<double> fir_filter_same(const std::vector<double>& x,
                                    const std::vector<double>& taps);
std::vector<cplx> fir_filter_same(const std::vector<cplx>& x,
                                  const std::vector<double>& taps);

// Polyphase rational resampler, anti-alias lowpass at min(in, out) Nyquist.
// The prototype's delay (including the fractional part) is removed, so output
// sample m sits at input time m * in_rate/out_rate exactly.
std::vector<double> resample(const std::vector<double>& x, double in_rate,
                             double out_rate, double stopband_db = 80.0);
std::vector<cplx> resample(const std::vector<cplx>& x, double in_rate,
                           double out_rate, double stopband_db = 80.0);

// Welch-averaged one-sided PSD of a real sequence (Hann window, 50% overlap).
struct Psd {
    std::vector<double> freqs_hz;
    std::vector<double> psd; // linear power density, 1/Hz
};
Psd welch_psd(const std::vector<double>& x, double rate_hz, std::size_t nfft = 4096);

// Amplitude of the cos/sin pair at frequency f (least-squares tone fit).
double tone_amplitude(const std::vector<double>& x, double rate_hz, double f_hz);

double rms(const std::vector<double>& x);

} // namespace pfans
