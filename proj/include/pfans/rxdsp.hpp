#pragma once

#include <cstdint>
#include <vector>

#include "pfans/fading.hpp"
#include "pfans/txdsp.hpp"
#include "pfans/waveform.hpp"

namespace pfans {

struct EqualizerConfig {
    std::size_t taps = 31; // Ts/2-spaced, odd
    double mu_train = 1e-3;
    double mu_dd = 1e-4;
};

struct BandMetrics {
    double snr_db = 0.0;
    double ber = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bit_count = 0;
    double evm = 0.0;
    // pass/fail against {2.7e-2, 2.0e-2, 1.25e-2}
    std::vector<bool> fec_pass;
};

inline constexpr double kFecThresholds[3] = {2.7e-2, 2.0e-2, 1.25e-2};

// Per band: down-conversion, anti-aliased resampling to 2 sps, matched RRC.
std::vector<ComplexWaveform> de_fdm(const RealWaveform& rx, const BandPlan& plan,
                                    std::size_t rrc_span = 32);

// Integer-lag alignment against the RRC-shaped preamble at 2 sps.
struct SyncResult {
    ComplexWaveform aligned;
    std::ptrdiff_t lag = 0;
    cplx channel_gain{1.0, 0.0}; // complex gain estimate at the peak
};
SyncResult synchronize(const ComplexWaveform& rx_band, const std::vector<cplx>& preamble_symbols,
                       double rolloff, std::size_t rrc_span = 32,
                       std::size_t max_lag = SIZE_MAX);

// Ts/2-spaced 2x2 real-valued LMS; training on the first preamble_len reference
// symbols, decision-directed afterward. One output per symbol. channel_gain
// seeds the center tap with the inverse of the estimated one-tap channel so
// training starts near the solution even for sign-flipped fading regions.
std::vector<cplx> lms_equalize(const ComplexWaveform& band, const std::vector<cplx>& ref_symbols,
                               std::size_t preamble_len, ModFormat format,
                               const EqualizerConfig& cfg, cplx channel_gain = {1.0, 0.0});

// Hard decisions, Gray demap, BER/SNR against the transmitted bits.
BandMetrics demap_and_count(const std::vector<cplx>& estimates,
                            const std::vector<cplx>& ref_symbols,
                            const std::vector<std::uint8_t>& tx_bits, ModFormat format,
                            std::size_t skip_symbols);

cplx hard_decision(cplx v, ModFormat format);

} // namespace pfans
