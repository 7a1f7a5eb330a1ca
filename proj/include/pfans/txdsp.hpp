#pragma once

#include <cstdint>
#include <vector>

#include "pfans/fading.hpp"
#include "pfans/waveform.hpp"

namespace pfans {

struct SymbolFrame {
    std::vector<cplx> symbols; // PAM4 carries zero imaginary part
    ModFormat format = ModFormat::PAM4;
    std::size_t preamble_len = 0;
    std::uint64_t seed = 0;
};

std::vector<std::uint8_t> generate_bits(std::size_t n, std::uint64_t seed);

// Gray maps, unit average power (PAM4 / sqrt 5, 16QAM / sqrt 10).
std::vector<double> map_pam4(const std::vector<std::uint8_t>& bits);
std::vector<cplx> map_16qam(const std::vector<std::uint8_t>& bits);

// Hard decisions back to bits (nearest constellation point, same Gray tables).
std::vector<std::uint8_t> demap_pam4(const std::vector<double>& symbols);
std::vector<std::uint8_t> demap_16qam(const std::vector<cplx>& symbols);

// Unit-energy root-raised-cosine taps, length span*sps + 1.
std::vector<double> rrc_taps(double rolloff, std::size_t span_symbols, std::size_t sps);

// 2 sps upsample -> RRC -> polyphase resample to target_rate.
ComplexWaveform shape_and_resample(const SymbolFrame& frame, double rolloff,
                                   double baud_hz, double target_rate_hz,
                                   std::size_t rrc_span = 32);

// Real IF upconversion; f_c = 0 takes the real part (PAM4 baseband path).
RealWaveform upconvert(const ComplexWaveform& bb, double f_c_hz);

// Weighted sum of per-band passband waveforms, normalized to unit RMS.
RealWaveform fdm_multiplex(const std::vector<RealWaveform>& waves, const BandPlan& plan);

SymbolFrame make_frame(ModFormat format, std::size_t n_symbols, std::size_t preamble_len,
                       std::uint64_t seed);

// The bits that generated a frame (for BER counting on the receive side).
std::vector<std::uint8_t> frame_bits(const SymbolFrame& frame);

} // namespace pfans
