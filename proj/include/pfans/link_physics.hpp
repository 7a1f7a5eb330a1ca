#pragma once

#include <cstdint>
#include <vector>

#include "pfans/fading.hpp"
#include "pfans/waveform.hpp"

namespace pfans {

struct OpticalField {
    std::vector<cplx> envelope;
    double rate_hz = 0.0;
    double center_wavelength_nm = 1550.0;

    double mean_power_w() const;
};

struct EaParams {
    double vsat_v = 2.0;
    double smoothness = 2.0; // Rapp p
    double backoff_db = 9.0; // input RMS below vsat
};

struct MzmParams {
    double vpi_v = 4.0;
    double bias_v = -2.0;        // quadrature for vpi = 4
    double drive_fraction = 0.4; // peak drive as a fraction of vpi/2
};

struct LaserParams {
    double power_dbm = 13.0;
    double linewidth_hz = 100e3;
    double rin_db_hz = -150.0;
    double wavelength_nm = 1550.0;
    bool phase_noise_on = true;
    bool rin_on = true;
};

struct PdParams {
    double responsivity_a_w = 0.8;
    double dark_a = 5e-9;
    double thermal_a_rthz = 10e-12;
    bool thermal_on = true;
};

struct AdcParams {
    int enob = 6;
    bool enabled = true;
};

struct FrontEndParams {
    EaParams ea;
    MzmParams mzm;
    LaserParams laser;
    PdParams pd;
    AdcParams adc;
    void validate() const;
};

// Ideal level-to-waveform mapping at the common simulation rate.
RealWaveform dac_reconstruct(const std::vector<double>& levels, double rate_hz);

// Rapp soft saturation; input rescaled so its RMS sits backoff_db below vsat.
RealWaveform rapp_amplify(const RealWaveform& v, const EaParams& ea);

// Quadrature-biased MZM field transfer E_out = E_in cos(pi (v + bias) / (2 vpi)).
// The drive is scaled so its peak reaches drive_fraction * vpi/2.
OpticalField mzm_modulate(const RealWaveform& v, const OpticalField& carrier,
                          const MzmParams& mzm);

OpticalField laser_source(std::size_t n_samples, double rate_hz, const LaserParams& laser,
                          std::uint64_t seed);

// Chromatic dispersion (all-pass on the envelope) plus scalar loss.
OpticalField fiber_propagate(const OpticalField& field, const FiberParams& fiber);

// Attenuate so mean |E|^2 hits the requested received optical power.
OpticalField voa_set_rop(const OpticalField& field, double rop_dbm);

// Square-law detection with dark current and thermal noise.
RealWaveform photodetect(const OpticalField& field, const PdParams& pd, std::uint64_t seed);

// AC-coupled ideal quantizer, full scale 4x input RMS.
RealWaveform adc_sample(const RealWaveform& i, int enob);

} // namespace pfans
