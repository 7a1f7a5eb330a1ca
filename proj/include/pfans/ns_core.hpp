#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pfans/dsp.hpp"
#include "pfans/fading.hpp"

namespace pfans {

// Least-squares weighting on a uniform (midpoint) grid over [0, f_nyquist].
struct WeightingFunction {
    std::vector<double> freqs_hz;
    std::vector<double> weight;
    double f_nyquist_hz = 0.0;
};

// Designed feedback filter: NTF(z) = 1 + sum_k g[k-1] z^-k (monic).
struct NtfDesign {
    std::vector<double> taps;       // g_1..g_K
    double objective_value = 0.0;   // achieved unregularized weighted LS sum
    std::vector<cplx> ntf_zeros;    // roots of 1 + G
    std::size_t grid_size = 0;
    double f_nyquist_hz = 0.0;

    // 1 + sum g_k exp(-j w k), w = 2 pi f / f_s
    cplx ntf_response(double omega) const;
};

struct QuantizerSpec {
    int bits = 3;
    double full_scale = 1.0; // levels span (-A, A)
};

struct ClipSpec {
    double clip1_level = 0.0; // feedforward
    double clip2_level = 0.0; // feedback path
};

struct ShapeTrace {
    std::vector<double> y;       // quantized output
    std::vector<double> epsilon; // quantization error, y - v
    std::uint64_t clip1_count = 0;
    std::uint64_t clip2_count = 0;
};

// weight(f) = |H(f)| inside occupied bands, 0 elsewhere; N midpoint grid points.
WeightingFunction build_weighting(const FiberParams& fiber, const BandPlan& plan,
                                  double f_nyquist_hz, std::size_t grid_size);

// Weighted least squares over the grid:
//   min_g  sum_i W_i^2 |1 + sum_k g_k e^{-j w_i k}|^2 + ridge ||g||^2
NtfDesign design_feedback_filter(const WeightingFunction& weighting, std::size_t taps,
                                 double ridge = 0.0);

// Nearest mid-rise level; saturates beyond +-A; exact midpoints round up.
double quantize(double v, const QuantizerSpec& q);

// Noise-shaping loop: u = clip1(x); v = u + clip2(sum g_k eps[n-k]); y = Q(v).
ShapeTrace shape(const std::vector<double>& x, const NtfDesign& design,
                 const QuantizerSpec& q, const ClipSpec& clips);

// Welch PSD of the shaping error y - x.
Psd shaped_noise_psd(const ShapeTrace& trace, const std::vector<double>& x,
                     double rate_hz, std::size_t nfft = 4096);

} // namespace pfans
