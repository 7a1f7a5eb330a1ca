#include "pfans/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pfans/dsp.hpp"
#include "pfans/errors.hpp"
#include "pfans/rng.hpp"
#include "pfans/txdsp.hpp"

using json = nlohmann::ordered_json;

namespace pfans {

void LinkConfig::validate() const {
    fiber.validate();
    frontend.validate();
    if (dac_bits < 1) throw ConfigError("config: dac_bits must be >= 1");
    if (bands.empty()) throw ConfigError("config: no band requests");
    if (!(sample_rate_hz > 0.0)) throw ConfigError("config: sample rate must be positive");
    if (symbols_min_band < preamble_len + discard_len + 10000)
        throw ConfigError("config: symbol count must cover preamble + discard + 10000");
    if (!(clips.clip1_rms > 0.0 && clips.clip2_rms > 0.0))
        throw ConfigError("config: clip levels must be positive");
}

LinkConfig LinkConfig::paper_default(int bits) {
    LinkConfig cfg;
    cfg.dac_bits = bits;
    cfg.bands = {
        {ModFormat::PAM4, 30e9, 0.1, 1.0},
        {ModFormat::QAM16, 8.1e9, 0.1, 1.0},
        {ModFormat::QAM16, 6e9, 0.1, 1.0},
    };
    return cfg;
}

namespace {

struct PreparedLink {
    BandPlan plan;
    std::vector<SymbolFrame> frames;
    RealWaveform mux; // unit RMS
    NtfDesign design;
    ShapeTrace trace;
    OpticalField pre_voa; // after fiber, before the VOA
    double rate_hz = 0.0;
};

NtfDesign design_with_fallback(const WeightingFunction& w, const NtfConfig& ntf) {
    try {
        return design_feedback_filter(w, ntf.taps, ntf.ridge);
    } catch (const NumericalError&) {
        return design_feedback_filter(w, ntf.taps, 1e-8);
    }
}

ShapeTrace shape_stage(const RealWaveform& mux, const NtfDesign& design,
                       const LinkConfig& cfg, const ClipConfig& clips) {
    const double r = rms(mux.samples);
    ClipSpec cs{clips.clip1_rms * r, clips.clip2_rms * r};
    QuantizerSpec q{cfg.dac_bits, cs.clip1_level};
    if (cfg.noise_shaping_on) return shape(mux.samples, design, q, cs);
    NtfDesign flat;
    flat.f_nyquist_hz = design.f_nyquist_hz;
    return shape(mux.samples, flat, q, cs);
}

OpticalField analog_front(const ShapeTrace& trace, const LinkConfig& cfg) {
    const RealWaveform dac = dac_reconstruct(trace.y, cfg.sample_rate_hz);
    const RealWaveform ea_out = rapp_amplify(dac, cfg.frontend.ea);
    const OpticalField carrier = laser_source(ea_out.samples.size(), cfg.sample_rate_hz,
                                              cfg.frontend.laser,
                                              derive_seed(cfg.seed, 11));
    const OpticalField mod = mzm_modulate(ea_out, carrier, cfg.frontend.mzm);
    return fiber_propagate(mod, cfg.fiber);
}

PreparedLink prepare(const LinkConfig& cfg, const ClipConfig& clips) {
    cfg.validate();
    PreparedLink prep;
    prep.rate_hz = cfg.sample_rate_hz;
    const double f_nyq = 0.5 * cfg.sample_rate_hz;
    prep.plan = plan_bands(cfg.fiber, cfg.bands, f_nyq, cfg.guard_hz);

    double min_baud = prep.plan.bands.front().baud_hz;
    for (const BandSpec& b : prep.plan.bands) min_baud = std::min(min_baud, b.baud_hz);
    const double duration = static_cast<double>(cfg.symbols_min_band) / min_baud;

    std::vector<RealWaveform> waves;
    for (std::size_t b = 0; b < prep.plan.bands.size(); ++b) {
        const BandSpec& spec = prep.plan.bands[b];
        const std::size_t n_sym =
            static_cast<std::size_t>(std::floor(duration * spec.baud_hz + 0.5));
        SymbolFrame frame = make_frame(spec.format, n_sym, cfg.preamble_len,
                                       derive_seed(cfg.seed, 100 + b));
        ComplexWaveform bb = shape_and_resample(frame, spec.rolloff, spec.baud_hz,
                                                cfg.sample_rate_hz);
        waves.push_back(upconvert(bb, spec.carrier_hz));
        prep.frames.push_back(std::move(frame));
    }
    prep.mux = fdm_multiplex(waves, prep.plan);

    const WeightingFunction w = build_weighting(cfg.fiber, prep.plan, f_nyq, cfg.ntf.grid);
    prep.design = design_with_fallback(w, cfg.ntf);
    prep.trace = shape_stage(prep.mux, prep.design, cfg, clips);
    prep.pre_voa = analog_front(prep.trace, cfg);
    return prep;
}

std::vector<BandMetrics> receive(const PreparedLink& prep, const LinkConfig& cfg,
                                 double rop_dbm, std::uint64_t noise_stream,
                                 RealWaveform* rx_out = nullptr) {
    const OpticalField at_pd = voa_set_rop(prep.pre_voa, rop_dbm);
    const RealWaveform photo = photodetect(at_pd, cfg.frontend.pd,
                                           derive_seed(cfg.seed, 1000 + noise_stream));
    RealWaveform rx = cfg.frontend.adc.enabled
                          ? adc_sample(photo, cfg.frontend.adc.enob)
                          : adc_sample(photo, 52); // AC coupling only, in effect
    if (rx_out) *rx_out = rx;

    const std::vector<ComplexWaveform> bands = de_fdm(rx, prep.plan);
    std::vector<BandMetrics> metrics;
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const SymbolFrame& frame = prep.frames[b];
        const std::vector<cplx> preamble(frame.symbols.begin(),
                                         frame.symbols.begin() +
                                             static_cast<std::ptrdiff_t>(std::min(
                                                 frame.preamble_len, frame.symbols.size())));
        // every stage is group-delay compensated, so the true lag sits near
        // zero; a bounded search keeps the correlation cost flat in frame size
        const SyncResult sync = synchronize(bands[b], preamble,
                                            prep.plan.bands[b].rolloff, 32, 1 << 14);
        // keep only symbols whose Ts/2 window is fully inside the aligned stream
        const std::size_t usable =
            sync.aligned.samples.size() > cfg.eq.taps
                ? (sync.aligned.samples.size() - cfg.eq.taps) / 2
                : 0;
        const std::size_t n_sym = std::min(frame.symbols.size(), usable);
        if (n_sym <= cfg.preamble_len + cfg.discard_len)
            throw ConfigError("receive: too few usable symbols after sync");
        const std::vector<cplx> ref(frame.symbols.begin(),
                                    frame.symbols.begin() + static_cast<std::ptrdiff_t>(n_sym));
        const std::vector<cplx> est = lms_equalize(sync.aligned, ref, cfg.preamble_len,
                                                   frame.format, cfg.eq,
                                                   sync.channel_gain);
        const std::vector<std::uint8_t> all_bits = frame_bits(frame);
        const std::vector<std::uint8_t> bits(
            all_bits.begin(),
            all_bits.begin() + static_cast<std::ptrdiff_t>(
                                   n_sym * static_cast<std::size_t>(bits_per_symbol(frame.format))));
        metrics.push_back(demap_and_count(est, ref, bits, frame.format,
                                          cfg.preamble_len + cfg.discard_len));
    }
    return metrics;
}

double aggregate_rate_gbps(const BandPlan& plan) {
    double rate = 0.0;
    for (const BandSpec& b : plan.bands)
        rate += b.baud_hz / 1e9 * static_cast<double>(bits_per_symbol(b.format));
    return rate;
}

} // namespace

RunReport run_link(const LinkConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    PreparedLink prep = prepare(cfg, cfg.clips);
    RealWaveform rx;
    RunReport report;
    report.band_metrics = receive(prep, cfg, cfg.rop_dbm, 0, &rx);
    report.config = cfg;
    report.plan = prep.plan;
    report.aggregate_rate_gbps = aggregate_rate_gbps(prep.plan);
    BandPlan baseline;
    baseline.bands.push_back(prep.plan.bands.front());
    report.baseline_rate_gbps = aggregate_rate_gbps(baseline);
    report.improvement_percent =
        100.0 * (report.aggregate_rate_gbps - report.baseline_rate_gbps) /
        report.baseline_rate_gbps;
    report.ntf = prep.design;
    report.clip1_count = prep.trace.clip1_count;
    report.clip2_count = prep.trace.clip2_count;
    report.tx_psd = welch_psd(prep.mux.samples, cfg.sample_rate_hz);
    report.shaped_psd = welch_psd(prep.trace.y, cfg.sample_rate_hz);
    report.rx_psd = welch_psd(rx.samples, cfg.sample_rate_hz);
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<SweepPoint> sweep_rop(const LinkConfig& cfg, std::vector<double> rop_list,
                                  unsigned workers) {
    if (rop_list.empty()) throw ConfigError("sweep_rop: empty ROP list");
    std::sort(rop_list.begin(), rop_list.end());
    const PreparedLink prep = prepare(cfg, cfg.clips);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SweepPoint> points(rop_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rop_list.size()) return;
            points[i].rop_dbm = rop_list[i];
            points[i].band_metrics = receive(prep, cfg, rop_list[i], i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<unsigned>(workers, rop_list.size()); ++t)
        pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return points;
}

ClipSweepResult sweep_clips(const LinkConfig& cfg, const std::vector<double>& clip1_grid,
                            const std::vector<double>& clip2_grid) {
    if (clip1_grid.empty() || clip2_grid.empty())
        throw ConfigError("sweep_clips: empty grid");
    // tx, plan and NTF design are clip-independent; build them once
    ClipSweepResult result;
    double best = 1e300;
    for (std::size_t i = 0; i < clip1_grid.size(); ++i)
        for (std::size_t j = 0; j < clip2_grid.size(); ++j) {
            LinkConfig point = cfg;
            point.clips = ClipConfig{clip1_grid[i], clip2_grid[j]};
            double worst = 0.0;
            try {
                const PreparedLink prep = prepare(point, point.clips);
                const std::vector<BandMetrics> metrics =
                    receive(prep, point, point.rop_dbm, 0);
                for (const BandMetrics& m : metrics) worst = std::max(worst, m.ber);
            } catch (const SyncError&) {
                // extreme clip settings can wreck the signal outright; score
                // the cell as unusable instead of aborting the grid search
                worst = 0.5;
            }
            ClipCell cell{clip1_grid[i], clip2_grid[j], worst};
            if (worst < best) {
                best = worst;
                result.best_index = result.cells.size();
                result.best_on_edge = (i == 0 || i + 1 == clip1_grid.size() ||
                                       j == 0 || j + 1 == clip2_grid.size());
            }
            result.cells.push_back(cell);
        }
    return result;
}

double probe_fading_point(const LinkConfig& cfg, double f_hz) {
    // single small tone, all noise off, no quantization: the ratio of received
    // RF amplitude with and without fiber is the channel's |H(f)|
    const std::size_t n = 1 << 14;
    RealWaveform tone;
    tone.rate_hz = cfg.sample_rate_hz;
    tone.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        tone.samples[i] = std::sin(2.0 * M_PI * f_hz * static_cast<double>(i) /
                                   cfg.sample_rate_hz);
    LaserParams quiet = cfg.frontend.laser;
    quiet.phase_noise_on = false;
    quiet.rin_on = false;
    MzmParams mzm = cfg.frontend.mzm;
    mzm.drive_fraction = 0.02; // small-signal regime
    PdParams pd = cfg.frontend.pd;
    pd.thermal_on = false;
    const OpticalField carrier = laser_source(n, cfg.sample_rate_hz, quiet, 0);
    const OpticalField mod = mzm_modulate(tone, carrier, mzm);

    auto detect_amp = [&](const OpticalField& field) {
        const RealWaveform photo = photodetect(field, pd, 0);
        return tone_amplitude(photo.samples, cfg.sample_rate_hz, f_hz);
    };
    const double with_fiber = detect_amp(fiber_propagate(mod, cfg.fiber));
    FiberParams b2b = cfg.fiber;
    b2b.length_m = 0.0;
    const double back_to_back = detect_amp(fiber_propagate(mod, b2b));
    if (back_to_back <= 0.0) return -300.0;
    return std::max(with_fiber / back_to_back, 1e-15);
}

std::vector<ProbePoint> probe_fading(const LinkConfig& cfg, const std::vector<double>& freqs) {
    std::vector<ProbePoint> out;
    out.reserve(freqs.size());
    for (double f : freqs)
        out.push_back({f, 20.0 * std::log10(probe_fading_point(cfg, f))});
    return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

json band_request_to_json(const BandRequest& b) {
    return json{{"format", format_name(b.format)},
                {"baud_ghz", b.baud_hz / 1e9},
                {"rolloff", b.rolloff},
                {"power_weight", b.power_weight}};
}

BandRequest band_request_from_json(const json& j) {
    BandRequest b;
    b.format = parse_format(j.at("format").get<std::string>());
    b.baud_hz = j.at("baud_ghz").get<double>() * 1e9;
    b.rolloff = j.value("rolloff", 0.1);
    b.power_weight = j.value("power_weight", 1.0);
    return b;
}

json config_to_json_obj(const LinkConfig& c) {
    json bands = json::array();
    for (const BandRequest& b : c.bands) bands.push_back(band_request_to_json(b));
    return json{
        {"schema_version", 1},
        {"fiber",
         {{"length_km", c.fiber.length_m / 1e3},
          {"dispersion_ps_nm_km", c.fiber.dispersion_ps_nm_km},
          {"wavelength_nm", c.fiber.wavelength_nm},
          {"attenuation_db_km", c.fiber.attenuation_db_km}}},
        {"frontend",
         {{"ea",
           {{"vsat_v", c.frontend.ea.vsat_v},
            {"smoothness", c.frontend.ea.smoothness},
            {"backoff_db", c.frontend.ea.backoff_db}}},
          {"mzm",
           {{"vpi_v", c.frontend.mzm.vpi_v},
            {"bias_v", c.frontend.mzm.bias_v},
            {"drive_fraction", c.frontend.mzm.drive_fraction}}},
          {"laser",
           {{"power_dbm", c.frontend.laser.power_dbm},
            {"linewidth_hz", c.frontend.laser.linewidth_hz},
            {"rin_db_hz", c.frontend.laser.rin_db_hz},
            {"wavelength_nm", c.frontend.laser.wavelength_nm},
            {"phase_noise_on", c.frontend.laser.phase_noise_on},
            {"rin_on", c.frontend.laser.rin_on}}},
          {"pd",
           {{"responsivity_a_w", c.frontend.pd.responsivity_a_w},
            {"dark_a", c.frontend.pd.dark_a},
            {"thermal_a_rthz", c.frontend.pd.thermal_a_rthz},
            {"thermal_on", c.frontend.pd.thermal_on}}},
          {"adc", {{"enob", c.frontend.adc.enob}, {"enabled", c.frontend.adc.enabled}}}}},
        {"dac_bits", c.dac_bits},
        {"ntf", {{"taps", c.ntf.taps}, {"grid", c.ntf.grid}, {"ridge", c.ntf.ridge}}},
        {"clips", {{"clip1_rms", c.clips.clip1_rms}, {"clip2_rms", c.clips.clip2_rms}}},
        {"bands", bands},
        {"sample_rate_ghz", c.sample_rate_hz / 1e9},
        {"guard_ghz", c.guard_hz / 1e9},
        {"symbols_min_band", c.symbols_min_band},
        {"preamble_len", c.preamble_len},
        {"discard_len", c.discard_len},
        {"eq",
         {{"taps", c.eq.taps}, {"mu_train", c.eq.mu_train}, {"mu_dd", c.eq.mu_dd}}},
        {"seed", c.seed},
        {"rop_dbm", c.rop_dbm},
        {"noise_shaping_on", c.noise_shaping_on},
    };
}

LinkConfig config_from_json_obj(const json& j) {
    LinkConfig c = LinkConfig::paper_default();
    if (j.contains("fiber")) {
        const json& f = j["fiber"];
        c.fiber.length_m = f.value("length_km", 10.0) * 1e3;
        c.fiber.dispersion_ps_nm_km = f.value("dispersion_ps_nm_km", 17.0);
        c.fiber.wavelength_nm = f.value("wavelength_nm", 1550.0);
        c.fiber.attenuation_db_km = f.value("attenuation_db_km", 0.2);
    }
    if (j.contains("frontend")) {
        const json& fe = j["frontend"];
        if (fe.contains("ea")) {
            c.frontend.ea.vsat_v = fe["ea"].value("vsat_v", 2.0);
            c.frontend.ea.smoothness = fe["ea"].value("smoothness", 2.0);
            c.frontend.ea.backoff_db = fe["ea"].value("backoff_db", 9.0);
        }
        if (fe.contains("mzm")) {
            c.frontend.mzm.vpi_v = fe["mzm"].value("vpi_v", 4.0);
            c.frontend.mzm.bias_v = fe["mzm"].value("bias_v", -2.0);
            c.frontend.mzm.drive_fraction = fe["mzm"].value("drive_fraction", 0.4);
        }
        if (fe.contains("laser")) {
            c.frontend.laser.power_dbm = fe["laser"].value("power_dbm", 13.0);
            c.frontend.laser.linewidth_hz = fe["laser"].value("linewidth_hz", 100e3);
            c.frontend.laser.rin_db_hz = fe["laser"].value("rin_db_hz", -150.0);
            c.frontend.laser.wavelength_nm = fe["laser"].value("wavelength_nm", 1550.0);
            c.frontend.laser.phase_noise_on = fe["laser"].value("phase_noise_on", true);
            c.frontend.laser.rin_on = fe["laser"].value("rin_on", true);
        }
        if (fe.contains("pd")) {
            c.frontend.pd.responsivity_a_w = fe["pd"].value("responsivity_a_w", 0.8);
            c.frontend.pd.dark_a = fe["pd"].value("dark_a", 5e-9);
            c.frontend.pd.thermal_a_rthz = fe["pd"].value("thermal_a_rthz", 10e-12);
            c.frontend.pd.thermal_on = fe["pd"].value("thermal_on", true);
        }
        if (fe.contains("adc")) {
            c.frontend.adc.enob = fe["adc"].value("enob", 6);
            c.frontend.adc.enabled = fe["adc"].value("enabled", true);
        }
    }
    c.dac_bits = j.value("dac_bits", 3);
    if (j.contains("ntf")) {
        c.ntf.taps = j["ntf"].value("taps", std::size_t{21});
        c.ntf.grid = j["ntf"].value("grid", std::size_t{4096});
        c.ntf.ridge = j["ntf"].value("ridge", 25.0);
    }
    if (j.contains("clips")) {
        c.clips.clip1_rms = j["clips"].value("clip1_rms", 3.2);
        c.clips.clip2_rms = j["clips"].value("clip2_rms", 3.2);
    }
    if (j.contains("bands")) {
        c.bands.clear();
        for (const json& b : j["bands"]) c.bands.push_back(band_request_from_json(b));
    }
    c.sample_rate_hz = j.value("sample_rate_ghz", 120.0) * 1e9;
    c.guard_hz = j.value("guard_ghz", 0.5) * 1e9;
    c.symbols_min_band = j.value("symbols_min_band", std::size_t{200000});
    c.preamble_len = j.value("preamble_len", std::size_t{1024});
    c.discard_len = j.value("discard_len", std::size_t{5000});
    if (j.contains("eq")) {
        c.eq.taps = j["eq"].value("taps", std::size_t{31});
        c.eq.mu_train = j["eq"].value("mu_train", 1e-3);
        c.eq.mu_dd = j["eq"].value("mu_dd", 1e-4);
    }
    c.seed = j.value("seed", std::uint64_t{1});
    c.rop_dbm = j.value("rop_dbm", -11.0);
    c.noise_shaping_on = j.value("noise_shaping_on", true);
    return c;
}

json metrics_to_json(const BandMetrics& m) {
    return json{{"snr_db", m.snr_db},
                {"ber", m.ber},
                {"bit_errors", m.bit_errors},
                {"bit_count", m.bit_count},
                {"evm", m.evm},
                {"fec_pass",
                 {{"2.7e-2", m.fec_pass.size() > 0 && m.fec_pass[0]},
                  {"2.0e-2", m.fec_pass.size() > 1 && m.fec_pass[1]},
                  {"1.25e-2", m.fec_pass.size() > 2 && m.fec_pass[2]}}}};
}

json ntf_to_json(const NtfDesign& d) {
    json zeros = json::array();
    for (const cplx& z : d.ntf_zeros)
        zeros.push_back({{"re", z.real()}, {"im", z.imag()}});
    return json{{"taps", d.taps},
                {"objective_value", d.objective_value},
                {"grid_size", d.grid_size},
                {"f_nyquist_hz", d.f_nyquist_hz},
                {"zeros", zeros}};
}

void write_psd_csv(const Psd& psd, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "freq_hz,psd_db\n";
    for (std::size_t i = 0; i < psd.freqs_hz.size(); ++i) {
        const double db = psd.psd[i] > 0.0 ? 10.0 * std::log10(psd.psd[i]) : -300.0;
        out << psd.freqs_hz[i] << "," << db << "\n";
    }
}

} // namespace

std::string config_to_json(const LinkConfig& cfg) {
    return config_to_json_obj(cfg).dump(2);
}

LinkConfig config_from_json(const std::string& text) {
    return config_from_json_obj(json::parse(text));
}

std::string report_to_json(const RunReport& report) {
    json plan = json::array();
    for (const BandSpec& b : report.plan.bands)
        plan.push_back({{"format", format_name(b.format)},
                        {"baud_ghz", b.baud_hz / 1e9},
                        {"carrier_ghz", b.carrier_hz / 1e9},
                        {"rolloff", b.rolloff},
                        {"power_weight", b.power_weight}});
    json metrics = json::array();
    for (const BandMetrics& m : report.band_metrics) metrics.push_back(metrics_to_json(m));
    const json doc{
        {"schema_version", report.schema_version},
        {"config", config_to_json_obj(report.config)},
        {"plan", plan},
        {"band_metrics", metrics},
        {"aggregate_rate_gbps", report.aggregate_rate_gbps},
        {"baseline_rate_gbps", report.baseline_rate_gbps},
        {"improvement_percent", report.improvement_percent},
        {"clip1_count", report.clip1_count},
        {"clip2_count", report.clip2_count},
        {"ntf", ntf_to_json(report.ntf)},
    };
    return doc.dump(2);
}

void emit_reports(const RunReport& report, const std::string& out_dir,
                  const std::vector<SweepPoint>* sweep) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    {
        std::ofstream out(dir / "results.json");
        if (!out) throw ConfigError("emit_reports: cannot write to " + out_dir);
        out << report_to_json(report) << "\n";
    }
    {
        std::ofstream out(dir / "ntf.json");
        out << ntf_to_json(report.ntf).dump(2) << "\n";
    }
    write_psd_csv(report.tx_psd, dir / "psd_tx.csv");
    write_psd_csv(report.shaped_psd, dir / "psd_shaped.csv");
    write_psd_csv(report.rx_psd, dir / "psd_rx.csv");
    if (sweep && !sweep->empty()) {
        std::ofstream out(dir / "curves.csv");
        out << "rop_dbm";
        for (std::size_t b = 0; b < sweep->front().band_metrics.size(); ++b)
            out << ",ber_band" << (b + 1) << ",snr_band" << (b + 1);
        out << "\n";
        for (const SweepPoint& p : *sweep) {
            out << p.rop_dbm;
            for (const BandMetrics& m : p.band_metrics)
                out << "," << m.ber << "," << m.snr_db;
            out << "\n";
        }
    }
}

} // namespace pfans
