#include "pfans/link_physics.hpp"

#include <algorithm>
#include <cmath>

#include "pfans/dsp.hpp"
#include "pfans/errors.hpp"
#include "pfans/fft.hpp"
#include "pfans/ns_core.hpp"
#include "pfans/rng.hpp"

namespace pfans {

double OpticalField::mean_power_w() const {
    if (envelope.empty()) return 0.0;
    double acc = 0.0;
    for (const cplx& e : envelope) acc += std::norm(e);
    return acc / static_cast<double>(envelope.size());
}

void FrontEndParams::validate() const {
    if (!(mzm.vpi_v > 0.0)) throw ArgumentError("frontend: vpi must be > 0");
    if (!(pd.responsivity_a_w > 0.0 && pd.responsivity_a_w <= 1.2))
        throw ArgumentError("frontend: responsivity outside (0, 1.2]");
    if (adc.enob < 1) throw ArgumentError("frontend: enob must be >= 1");
    if (!(ea.vsat_v > 0.0 && ea.smoothness > 0.0))
        throw ArgumentError("frontend: Rapp parameters must be positive");
}

RealWaveform dac_reconstruct(const std::vector<double>& levels, double rate_hz) {
    return RealWaveform{levels, rate_hz};
}

RealWaveform rapp_amplify(const RealWaveform& v, const EaParams& ea) {
    if (!(ea.vsat_v > 0.0 && ea.smoothness > 0.0))
        throw ArgumentError("rapp_amplify: vsat and smoothness must be positive");
    const double r = rms(v.samples);
    const double target_rms = ea.vsat_v * std::pow(10.0, -ea.backoff_db / 20.0);
    const double gain = (r > 0.0) ? target_rms / r : 1.0;
    RealWaveform out;
    out.rate_hz = v.rate_hz;
    out.samples.resize(v.samples.size());
    const double p2 = 2.0 * ea.smoothness;
    for (std::size_t i = 0; i < v.samples.size(); ++i) {
        const double x = v.samples[i] * gain;
        out.samples[i] = x / std::pow(1.0 + std::pow(std::abs(x) / ea.vsat_v, p2), 1.0 / p2);
    }
    return out;
}

OpticalField mzm_modulate(const RealWaveform& v, const OpticalField& carrier,
                          const MzmParams& mzm) {
    if (v.samples.size() != carrier.envelope.size())
        throw ArgumentError("mzm_modulate: drive/carrier length mismatch");
    double peak = 0.0;
    for (double s : v.samples) peak = std::max(peak, std::abs(s));
    const double target_peak = mzm.drive_fraction * 0.5 * mzm.vpi_v;
    const double gain = (peak > 0.0) ? target_peak / peak : 1.0;
    OpticalField out;
    out.rate_hz = carrier.rate_hz;
    out.center_wavelength_nm = carrier.center_wavelength_nm;
    out.envelope.resize(carrier.envelope.size());
    const double scale = M_PI / (2.0 * mzm.vpi_v);
    for (std::size_t i = 0; i < v.samples.size(); ++i)
        out.envelope[i] = carrier.envelope[i] * std::cos(scale * (v.samples[i] * gain + mzm.bias_v));
    return out;
}

OpticalField laser_source(std::size_t n_samples, double rate_hz, const LaserParams& laser,
                          std::uint64_t seed) {
    OpticalField field;
    field.rate_hz = rate_hz;
    field.center_wavelength_nm = laser.wavelength_nm;
    field.envelope.resize(n_samples);
    const double power_w = 1e-3 * std::pow(10.0, laser.power_dbm / 10.0);
    const double phase_var = 2.0 * M_PI * laser.linewidth_hz / rate_hz;
    const double rin_lin = std::pow(10.0, laser.rin_db_hz / 10.0);
    const double rin_var = rin_lin * rate_hz / 2.0;
    Rng rng(seed);
    double phase = 0.0;
    const bool pn = laser.phase_noise_on && laser.linewidth_hz > 0.0;
    const bool rin = laser.rin_on && std::isfinite(laser.rin_db_hz);
    const double phase_sigma = std::sqrt(phase_var);
    const double rin_sigma = std::sqrt(rin_var);
    for (std::size_t i = 0; i < n_samples; ++i) {
        if (pn) phase += phase_sigma * rng.gaussian();
        const double delta = rin ? rin_sigma * rng.gaussian() : 0.0;
        const double amp = std::sqrt(power_w * std::max(0.0, 1.0 + delta));
        field.envelope[i] = amp * std::exp(cplx(0.0, phase));
    }
    return field;
}

OpticalField fiber_propagate(const OpticalField& field, const FiberParams& fiber) {
    fiber.validate();
    OpticalField out = field;
    if (fiber.length_m == 0.0) return out;
    const double lam = fiber.wavelength_m();
    const double disp_coeff = lam * lam * fiber.dispersion_si() /
                              (4.0 * M_PI * kLightSpeed) * fiber.length_m;
    const std::size_t n = field.envelope.size();
    std::vector<cplx> spec = fft(field.envelope);
    for (std::size_t k = 0; k < n; ++k) {
        double f = static_cast<double>(k) / static_cast<double>(n) * field.rate_hz;
        if (f > 0.5 * field.rate_hz) f -= field.rate_hz;
        const double w = 2.0 * M_PI * f;
        spec[k] *= std::exp(cplx(0.0, disp_coeff * w * w));
    }
    out.envelope = ifft(spec);
    const double loss = std::pow(10.0, -fiber.attenuation_db_km * (fiber.length_m / 1e3) / 20.0);
    for (cplx& e : out.envelope) e *= loss;
    return out;
}

OpticalField voa_set_rop(const OpticalField& field, double rop_dbm) {
    const double target_w = 1e-3 * std::pow(10.0, rop_dbm / 10.0);
    const double current_w = field.mean_power_w();
    if (current_w <= 0.0) throw ConfigError("voa_set_rop: zero input power");
    if (target_w > current_w * (1.0 + 1e-12))
        throw ConfigError("voa_set_rop: requested ROP above available power (VOA only attenuates)");
    const double gain = std::sqrt(target_w / current_w);
    OpticalField out = field;
    for (cplx& e : out.envelope) e *= gain;
    return out;
}

RealWaveform photodetect(const OpticalField& field, const PdParams& pd, std::uint64_t seed) {
    RealWaveform out;
    out.rate_hz = field.rate_hz;
    out.samples.resize(field.envelope.size());
    const double sigma_th = pd.thermal_on
                                ? pd.thermal_a_rthz * std::sqrt(field.rate_hz / 2.0)
                                : 0.0;
    Rng rng(seed);
    for (std::size_t i = 0; i < field.envelope.size(); ++i) {
        double current = pd.responsivity_a_w * std::norm(field.envelope[i]) + pd.dark_a;
        if (sigma_th > 0.0) current += sigma_th * rng.gaussian();
        out.samples[i] = current;
    }
    return out;
}

RealWaveform adc_sample(const RealWaveform& i, int enob) {
    if (i.samples.empty()) return i;
    double mean = 0.0;
    for (double v : i.samples) mean += v;
    mean /= static_cast<double>(i.samples.size());
    RealWaveform ac;
    ac.rate_hz = i.rate_hz;
    ac.samples.resize(i.samples.size());
    for (std::size_t k = 0; k < i.samples.size(); ++k) ac.samples[k] = i.samples[k] - mean;
    const double r = rms(ac.samples);
    if (r == 0.0) return ac;
    QuantizerSpec q;
    q.bits = enob;
    q.full_scale = 4.0 * r;
    for (double& v : ac.samples) v = quantize(v, q);
    return ac;
}

} // namespace pfans
