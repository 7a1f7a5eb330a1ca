#pragma once

#include <string>
#include <vector>

namespace pfans {

inline constexpr double kLightSpeed = 299792458.0; // m/s

struct FiberParams {
    double length_m = 10e3;
    double dispersion_ps_nm_km = 17.0;
    double wavelength_nm = 1550.0;
    double attenuation_db_km = 0.2;

    // dispersion in SI units, s/m^2
    double dispersion_si() const { return dispersion_ps_nm_km * 1e-6; }
    double wavelength_m() const { return wavelength_nm * 1e-9; }
    void validate() const;
};

// |H(f)| of the dispersion + square-law detection channel on a frequency grid.
struct FadingResponse {
    std::vector<double> freqs_hz;
    std::vector<double> magnitude;
};

enum class ModFormat { PAM4, QAM16 };

inline int bits_per_symbol(ModFormat f) { return f == ModFormat::PAM4 ? 2 : 4; }
std::string format_name(ModFormat f);
ModFormat parse_format(const std::string& name);

struct BandSpec {
    ModFormat format = ModFormat::PAM4;
    double baud_hz = 0.0;
    double carrier_hz = 0.0; // 0 = baseband
    double rolloff = 0.1;
    double power_weight = 1.0;

    double occupied_bw() const { return baud_hz * (1.0 + rolloff); }
    // occupied interval [lo, hi]; baseband occupies [0, bw/2]
    double lo_hz() const { return carrier_hz == 0.0 ? 0.0 : carrier_hz - 0.5 * occupied_bw(); }
    double hi_hz() const { return carrier_hz == 0.0 ? 0.5 * occupied_bw() : carrier_hz + 0.5 * occupied_bw(); }
};

struct BandPlan {
    std::vector<BandSpec> bands;
    void validate(const FiberParams& fiber, double f_nyquist) const;
    bool covers(double f_hz) const; // f inside some occupied interval
};

struct BandRequest {
    ModFormat format = ModFormat::PAM4;
    double baud_hz = 0.0;
    double rolloff = 0.1;
    double power_weight = 1.0;
};

// |H(f)| = |cos(pi * lambda^2 * D * L * f^2 / c)|, chirp-free small-signal model.
FadingResponse power_fading_response(const FiberParams& fiber,
                                     const std::vector<double>& freqs_hz);
double fading_magnitude(const FiberParams& fiber, double f_hz);

// Ascending notch frequencies f_k = sqrt((2k-1) c / (2 lambda^2 D L)) <= f_max.
std::vector<double> notch_frequencies(const FiberParams& fiber, double f_max_hz);

// Fading-aware FDM placement: widest request at baseband, the rest centered in
// the lowest inter-notch passband that fits them with the guard margin.
BandPlan plan_bands(const FiberParams& fiber, const std::vector<BandRequest>& requests,
                    double f_nyquist_hz, double guard_hz = 0.5e9);

} // namespace pfans
