#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfans/fading.hpp"
#include "pfans/link_physics.hpp"
#include "pfans/ns_core.hpp"
#include "pfans/rxdsp.hpp"

namespace pfans {

struct NtfConfig {
    std::size_t taps = 21;
    std::size_t grid = 4096;
    // Ridge keeps the feedback taps small enough that the clip2 stage stays
    // out of saturation; without it the LS fit blows up the loop at low bit
    // depths and the shaper makes things worse instead of better.
    double ridge = 25.0;
};

struct ClipConfig {
    double clip1_rms = 3.2; // in units of the (unit-RMS) mux signal
    double clip2_rms = 3.2;
};

struct LinkConfig {
    FiberParams fiber;
    FrontEndParams frontend;
    int dac_bits = 3;
    NtfConfig ntf;
    ClipConfig clips;
    std::vector<BandRequest> bands;
    double sample_rate_hz = 120e9;
    double guard_hz = 0.5e9;
    std::size_t symbols_min_band = 200000; // symbol count of the slowest band
    std::size_t preamble_len = 1024;
    std::size_t discard_len = 5000;
    EqualizerConfig eq;
    std::uint64_t seed = 1;
    double rop_dbm = -11.0;
    bool noise_shaping_on = true; // false: plain quantization (g = 0 baseline)

    void validate() const;

    // the paper's three-band setup; dac_bits selects the 2- or 3-bit variant
    static LinkConfig paper_default(int dac_bits = 3);
};

struct RunReport {
    int schema_version = 1;
    LinkConfig config;
    BandPlan plan;
    std::vector<BandMetrics> band_metrics;
    double aggregate_rate_gbps = 0.0;
    double baseline_rate_gbps = 0.0;
    double improvement_percent = 0.0;
    NtfDesign ntf;
    std::uint64_t clip1_count = 0;
    std::uint64_t clip2_count = 0;
    Psd tx_psd;     // fading-aware FDM signal
    Psd shaped_psd; // PFA-NS output
    Psd rx_psd;     // post-ADC
    double wall_time_s = 0.0; // informational, not serialized
};

struct SweepPoint {
    double rop_dbm = 0.0;
    std::vector<BandMetrics> band_metrics;
};

struct ClipCell {
    double clip1_rms = 0.0;
    double clip2_rms = 0.0;
    double worst_ber = 0.0;
};

struct ClipSweepResult {
    std::vector<ClipCell> cells;
    std::size_t best_index = 0;
    bool best_on_edge = false;
};

RunReport run_link(const LinkConfig& cfg);

// One run per ROP with shared Tx bits, NTF design and pre-VOA optical field.
std::vector<SweepPoint> sweep_rop(const LinkConfig& cfg, std::vector<double> rop_list,
                                  unsigned workers = 0);

ClipSweepResult sweep_clips(const LinkConfig& cfg, const std::vector<double>& clip1_grid,
                            const std::vector<double>& clip2_grid);

// Small-signal MZM -> fiber -> PD RF response at one tone, relative to L = 0.
double probe_fading_point(const LinkConfig& cfg, double f_hz);
struct ProbePoint {
    double f_hz;
    double response_db;
};
std::vector<ProbePoint> probe_fading(const LinkConfig& cfg, const std::vector<double>& freqs);

// results.json / ntf.json / psd_*.csv / curves.csv writers.
void emit_reports(const RunReport& report, const std::string& out_dir,
                  const std::vector<SweepPoint>* sweep = nullptr);

std::string report_to_json(const RunReport& report);
std::string config_to_json(const LinkConfig& cfg);
LinkConfig config_from_json(const std::string& text);

} // namespace pfans
