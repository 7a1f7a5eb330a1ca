#include "pfans/txdsp.hpp"

#include <algorithm>
#include <cmath>

#include "pfans/dsp.hpp"
#include "pfans/errors.hpp"
#include "pfans/rng.hpp"

namespace pfans {

std::vector<std::uint8_t> generate_bits(std::size_t n, std::uint64_t seed) {
    std::vector<std::uint8_t> bits(n);
    Rng rng(seed);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng.bits64();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

namespace {
// Gray: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
constexpr double kGrayLevel[4] = {-3.0, -1.0, +1.0, +3.0};

int gray_index(std::uint8_t b0, std::uint8_t b1) {
    if (!b0 && !b1) return 0;
    if (!b0 && b1) return 1;
    if (b0 && b1) return 2;
    return 3;
}

void gray_bits(double level, std::uint8_t& b0, std::uint8_t& b1) {
    int idx = 0;
    double best = 1e300;
    for (int i = 0; i < 4; ++i) {
        const double d = std::abs(level - kGrayLevel[i]);
        if (d < best) { best = d; idx = i; }
    }
    static constexpr std::uint8_t table[4][2] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    b0 = table[idx][0];
    b1 = table[idx][1];
}
} // namespace

std::vector<double> map_pam4(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 2 != 0) throw ArgumentError("map_pam4: bit count not divisible by 2");
    std::vector<double> sym(bits.size() / 2);
    const double norm = 1.0 / std::sqrt(5.0);
    for (std::size_t i = 0; i < sym.size(); ++i)
        sym[i] = kGrayLevel[gray_index(bits[2 * i], bits[2 * i + 1])] * norm;
    return sym;
}

std::vector<cplx> map_16qam(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 4 != 0) throw ArgumentError("map_16qam: bit count not divisible by 4");
    std::vector<cplx> sym(bits.size() / 4);
    const double norm = 1.0 / std::sqrt(10.0);
    for (std::size_t i = 0; i < sym.size(); ++i) {
        const double re = kGrayLevel[gray_index(bits[4 * i], bits[4 * i + 1])];
        const double im = kGrayLevel[gray_index(bits[4 * i + 2], bits[4 * i + 3])];
        sym[i] = cplx(re, im) * norm;
    }
    return sym;
}

std::vector<std::uint8_t> demap_pam4(const std::vector<double>& symbols) {
    std::vector<std::uint8_t> bits(symbols.size() * 2);
    const double scale = std::sqrt(5.0);
    for (std::size_t i = 0; i < symbols.size(); ++i)
        gray_bits(symbols[i] * scale, bits[2 * i], bits[2 * i + 1]);
    return bits;
}

std::vector<std::uint8_t> demap_16qam(const std::vector<cplx>& symbols) {
    std::vector<std::uint8_t> bits(symbols.size() * 4);
    const double scale = std::sqrt(10.0);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        gray_bits(symbols[i].real() * scale, bits[4 * i], bits[4 * i + 1]);
        gray_bits(symbols[i].imag() * scale, bits[4 * i + 2], bits[4 * i + 3]);
    }
    return bits;
}

std::vector<double> rrc_taps(double rolloff, std::size_t span_symbols, std::size_t sps) {
    if (!(rolloff > 0.0 && rolloff <= 1.0)) throw ArgumentError("rrc_taps: rolloff out of (0, 1]");
    if (span_symbols % 2 != 0) throw ArgumentError("rrc_taps: span must be even");
    if (sps < 2) throw ArgumentError("rrc_taps: need sps >= 2");
    const std::size_t n = span_symbols * sps + 1;
    const double mid = 0.5 * static_cast<double>(n - 1);
    std::vector<double> taps(n);
    const double b = rolloff;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) - mid) / static_cast<double>(sps); // symbols
        double v = 0.0;
        if (std::abs(t) < 1e-10) {
            v = 1.0 + b * (4.0 / M_PI - 1.0);
        } else if (std::abs(std::abs(t) - 1.0 / (4.0 * b)) < 1e-10) {
            v = (b / std::sqrt(2.0)) *
                ((1.0 + 2.0 / M_PI) * std::sin(M_PI / (4.0 * b)) +
                 (1.0 - 2.0 / M_PI) * std::cos(M_PI / (4.0 * b)));
        } else {
            const double num = std::sin(M_PI * t * (1.0 - b)) +
                               4.0 * b * t * std::cos(M_PI * t * (1.0 + b));
            const double den = M_PI * t * (1.0 - 16.0 * b * b * t * t);
            v = num / den;
        }
        taps[i] = v;
    }
    double energy = 0.0;
    for (double v : taps) energy += v * v;
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : taps) v *= scale;
    return taps;
}

ComplexWaveform shape_and_resample(const SymbolFrame& frame, double rolloff,
                                   double baud_hz, double target_rate_hz,
                                   std::size_t rrc_span) {
    if (!(target_rate_hz >= baud_hz * (1.0 + rolloff)))
        throw ArgumentError("shape_and_resample: target rate below shaped-signal Nyquist");
    const std::size_t sps = 2;
    std::vector<cplx> up(frame.symbols.size() * sps, cplx{});
    for (std::size_t i = 0; i < frame.symbols.size(); ++i) up[i * sps] = frame.symbols[i];
    const std::vector<double> taps = rrc_taps(rolloff, rrc_span, sps);
    std::vector<cplx> shaped = fir_filter_same(up, taps);
    // RRC is unit-energy; scale by sqrt(sps) to keep unit average symbol power
    const double gain = std::sqrt(static_cast<double>(sps));
    for (auto& v : shaped) v *= gain;
    ComplexWaveform out;
    out.rate_hz = target_rate_hz;
    const double in_rate = baud_hz * static_cast<double>(sps);
    out.samples = (in_rate == target_rate_hz) ? std::move(shaped)
                                              : resample(shaped, in_rate, target_rate_hz);
    return out;
}

RealWaveform upconvert(const ComplexWaveform& bb, double f_c_hz) {
    RealWaveform out;
    out.rate_hz = bb.rate_hz;
    out.samples.resize(bb.samples.size());
    if (f_c_hz == 0.0) {
        for (std::size_t i = 0; i < bb.samples.size(); ++i)
            out.samples[i] = bb.samples[i].real();
        return out;
    }
    if (!(f_c_hz > 0.0 && f_c_hz < 0.5 * bb.rate_hz))
        throw ArgumentError("upconvert: carrier outside (0, rate/2)");
    const double w = 2.0 * M_PI * f_c_hz / bb.rate_hz;
    for (std::size_t i = 0; i < bb.samples.size(); ++i) {
        const double ph = w * static_cast<double>(i);
        out.samples[i] = bb.samples[i].real() * std::cos(ph) -
                         bb.samples[i].imag() * std::sin(ph);
    }
    return out;
}

RealWaveform fdm_multiplex(const std::vector<RealWaveform>& waves, const BandPlan& plan) {
    if (waves.empty()) throw ArgumentError("fdm_multiplex: no inputs");
    if (waves.size() != plan.bands.size())
        throw ArgumentError("fdm_multiplex: wave count != band count");
    const double rate = waves.front().rate_hz;
    std::size_t n = waves.front().samples.size();
    for (const RealWaveform& w : waves) {
        if (w.rate_hz != rate) throw ArgumentError("fdm_multiplex: sample-rate mismatch");
        n = std::min(n, w.samples.size());
    }
    RealWaveform out;
    out.rate_hz = rate;
    out.samples.assign(n, 0.0);
    for (std::size_t b = 0; b < waves.size(); ++b) {
        const double w = plan.bands[b].power_weight;
        for (std::size_t i = 0; i < n; ++i) out.samples[i] += w * waves[b].samples[i];
    }
    const double r = rms(out.samples);
    if (r > 0.0)
        for (double& v : out.samples) v /= r;
    return out;
}

SymbolFrame make_frame(ModFormat format, std::size_t n_symbols, std::size_t preamble_len,
                       std::uint64_t seed) {
    SymbolFrame frame;
    frame.format = format;
    frame.preamble_len = preamble_len;
    frame.seed = seed;
    const std::size_t bps = static_cast<std::size_t>(bits_per_symbol(format));
    const std::vector<std::uint8_t> bits = generate_bits(n_symbols * bps, seed);
    if (format == ModFormat::PAM4) {
        const std::vector<double> s = map_pam4(bits);
        frame.symbols.reserve(s.size());
        for (double v : s) frame.symbols.emplace_back(v, 0.0);
    } else {
        frame.symbols = map_16qam(bits);
    }
    return frame;
}

std::vector<std::uint8_t> frame_bits(const SymbolFrame& frame) {
    const std::size_t bps = static_cast<std::size_t>(bits_per_symbol(frame.format));
    return generate_bits(frame.symbols.size() * bps, frame.seed);
}

} // namespace pfans
