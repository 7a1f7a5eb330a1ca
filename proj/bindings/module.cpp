#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pfans/fading.hpp"
#include "pfans/harness.hpp"
#include "pfans/ns_core.hpp"

namespace py = pybind11;
using namespace pfans;

PYBIND11_MODULE(_pfans, m) {
    m.doc() = "IMDD link simulator with fading-aware quantization noise shaping";

    py::enum_<ModFormat>(m, "ModFormat")
        .value("PAM4", ModFormat::PAM4)
        .value("QAM16", ModFormat::QAM16);

    py::class_<FiberParams>(m, "FiberParams")
        .def(py::init<>())
        .def_readwrite("length_m", &FiberParams::length_m)
        .def_readwrite("dispersion_ps_nm_km", &FiberParams::dispersion_ps_nm_km)
        .def_readwrite("wavelength_nm", &FiberParams::wavelength_nm)
        .def_readwrite("attenuation_db_km", &FiberParams::attenuation_db_km);

    py::class_<BandRequest>(m, "BandRequest")
        .def(py::init<>())
        .def_readwrite("format", &BandRequest::format)
        .def_readwrite("baud_hz", &BandRequest::baud_hz)
        .def_readwrite("rolloff", &BandRequest::rolloff)
        .def_readwrite("power_weight", &BandRequest::power_weight);

    py::class_<BandSpec>(m, "BandSpec")
        .def_readonly("format", &BandSpec::format)
        .def_readonly("baud_hz", &BandSpec::baud_hz)
        .def_readonly("carrier_hz", &BandSpec::carrier_hz)
        .def_readonly("rolloff", &BandSpec::rolloff)
        .def_readonly("power_weight", &BandSpec::power_weight)
        .def("lo_hz", &BandSpec::lo_hz)
        .def("hi_hz", &BandSpec::hi_hz);

    py::class_<BandPlan>(m, "BandPlan")
        .def_readonly("bands", &BandPlan::bands)
        .def("covers", &BandPlan::covers);

    py::class_<NtfDesign>(m, "NtfDesign")
        .def_readonly("taps", &NtfDesign::taps)
        .def_readonly("objective_value", &NtfDesign::objective_value)
        .def_readonly("ntf_zeros", &NtfDesign::ntf_zeros)
        .def_readonly("grid_size", &NtfDesign::grid_size)
        .def_readonly("f_nyquist_hz", &NtfDesign::f_nyquist_hz)
        .def("ntf_response", &NtfDesign::ntf_response);

    py::class_<BandMetrics>(m, "BandMetrics")
        .def_readonly("snr_db", &BandMetrics::snr_db)
        .def_readonly("ber", &BandMetrics::ber)
        .def_readonly("bit_errors", &BandMetrics::bit_errors)
        .def_readonly("bit_count", &BandMetrics::bit_count)
        .def_readonly("evm", &BandMetrics::evm)
        .def_readonly("fec_pass", &BandMetrics::fec_pass);

    py::class_<LinkConfig>(m, "LinkConfig")
        .def(py::init<>())
        .def_static("paper_default", &LinkConfig::paper_default, py::arg("dac_bits") = 3)
        .def_readwrite("fiber", &LinkConfig::fiber)
        .def_readwrite("dac_bits", &LinkConfig::dac_bits)
        .def_readwrite("bands", &LinkConfig::bands)
        .def_readwrite("sample_rate_hz", &LinkConfig::sample_rate_hz)
        .def_readwrite("guard_hz", &LinkConfig::guard_hz)
        .def_readwrite("symbols_min_band", &LinkConfig::symbols_min_band)
        .def_readwrite("preamble_len", &LinkConfig::preamble_len)
        .def_readwrite("discard_len", &LinkConfig::discard_len)
        .def_readwrite("seed", &LinkConfig::seed)
        .def_readwrite("rop_dbm", &LinkConfig::rop_dbm)
        .def_readwrite("noise_shaping_on", &LinkConfig::noise_shaping_on)
        .def("validate", &LinkConfig::validate);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("plan", &RunReport::plan)
        .def_readonly("band_metrics", &RunReport::band_metrics)
        .def_readonly("aggregate_rate_gbps", &RunReport::aggregate_rate_gbps)
        .def_readonly("baseline_rate_gbps", &RunReport::baseline_rate_gbps)
        .def_readonly("improvement_percent", &RunReport::improvement_percent)
        .def_readonly("ntf", &RunReport::ntf)
        .def_readonly("clip1_count", &RunReport::clip1_count)
        .def_readonly("clip2_count", &RunReport::clip2_count);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("rop_dbm", &SweepPoint::rop_dbm)
        .def_readonly("band_metrics", &SweepPoint::band_metrics);

    py::class_<ProbePoint>(m, "ProbePoint")
        .def_readonly("f_hz", &ProbePoint::f_hz)
        .def_readonly("response_db", &ProbePoint::response_db);

    m.def("notch_frequencies", &notch_frequencies, py::arg("fiber"), py::arg("f_max_hz"));
    m.def("fading_magnitude", &fading_magnitude, py::arg("fiber"), py::arg("f_hz"));
    m.def("plan_bands", &plan_bands, py::arg("fiber"), py::arg("requests"),
          py::arg("f_nyquist_hz"), py::arg("guard_hz") = 0.5e9);
    m.def(
        "design_ntf",
        [](const FiberParams& fiber, const BandPlan& plan, double f_nyq,
           std::size_t grid, std::size_t taps, double ridge) {
            return design_feedback_filter(build_weighting(fiber, plan, f_nyq, grid),
                                          taps, ridge);
        },
        py::arg("fiber"), py::arg("plan"), py::arg("f_nyquist_hz"),
        py::arg("grid") = 4096, py::arg("taps") = 21, py::arg("ridge") = 0.0);
    m.def(
        "shape",
        [](const std::vector<double>& x, const NtfDesign& d, int bits,
           double full_scale, double clip1, double clip2) {
            const ShapeTrace t = shape(x, d, QuantizerSpec{bits, full_scale},
                                       ClipSpec{clip1, clip2});
            return py::make_tuple(t.y, t.epsilon, t.clip1_count, t.clip2_count);
        },
        py::arg("x"), py::arg("design"), py::arg("bits"), py::arg("full_scale"),
        py::arg("clip1"), py::arg("clip2"));
    m.def("run_link", &run_link, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_rop", &sweep_rop, py::arg("config"), py::arg("rop_list"),
          py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("probe_fading", &probe_fading, py::arg("config"), py::arg("freqs"),
          py::call_guard<py::gil_scoped_release>());
    m.def("emit_reports",
          [](const RunReport& r, const std::string& dir) { emit_reports(r, dir); });
    m.def("config_to_json", &config_to_json);
    m.def("config_from_json", &config_from_json);
}
