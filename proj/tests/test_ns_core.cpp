#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pfans/errors.hpp"
#include "pfans/fft.hpp"
#include "pfans/ns_core.hpp"
#include "pfans/rng.hpp"

using namespace pfans;

namespace {
// independent evaluation of the weighted design objective on the grid
double objective_oracle(const WeightingFunction& w, const std::vector<double>& g) {
    double sum = 0.0;
    for (std::size_t i = 0; i < w.freqs_hz.size(); ++i) {
        const double omega = M_PI * w.freqs_hz[i] / w.f_nyquist_hz;
        cplx resp(1.0, 0.0);
        for (std::size_t k = 0; k < g.size(); ++k)
            resp += g[k] * std::exp(cplx(0.0, -omega * double(k + 1)));
        sum += w.weight[i] * w.weight[i] * std::norm(resp);
    }
    return sum;
}

WeightingFunction flat_weighting(std::size_t n) {
    WeightingFunction w;
    w.f_nyquist_hz = 60e9;
    for (std::size_t i = 0; i < n; ++i) {
        w.freqs_hz.push_back((double(i) + 0.5) * w.f_nyquist_hz / double(n));
        w.weight.push_back(1.0);
    }
    return w;
}
} // namespace

TEST_CASE("quantizer lattice") {
    CHECK(quantize(0.3, {2, 1.0}) == doctest::Approx(0.25));
    CHECK(quantize(10.0, {2, 1.0}) == doctest::Approx(0.75));
    CHECK(quantize(-1.0, {3, 1.0}) == doctest::Approx(-0.875));
    // exact midpoint rounds toward +inf
    CHECK(quantize(0.0, {2, 1.0}) == doctest::Approx(0.25));
    CHECK(quantize(-0.5, {2, 1.0}) == doctest::Approx(-0.25));
}

TEST_CASE("flat weighting designs the zero filter") {
    const NtfDesign d = design_feedback_filter(flat_weighting(4096), 21, 0.0);
    double linf = 0.0;
    for (double g : d.taps) linf = std::max(linf, std::abs(g));
    CHECK(linf < 1e-9);
}

TEST_CASE("half-band single tap recovers -2/pi") {
    WeightingFunction w = flat_weighting(16384);
    // weight = 1 on [0, fs/4] = [0, f_nyq/2]
    for (std::size_t i = 0; i < w.freqs_hz.size(); ++i)
        w.weight[i] = (w.freqs_hz[i] <= 0.5 * w.f_nyquist_hz) ? 1.0 : 0.0;
    const NtfDesign d = design_feedback_filter(w, 1, 0.0);
    REQUIRE(d.taps.size() == 1);
    CHECK(d.taps[0] == doctest::Approx(-2.0 / M_PI).epsilon(1e-4));
}

TEST_CASE("degenerate design requests rejected") {
    CHECK_THROWS_AS(design_feedback_filter(flat_weighting(64), 0, 0.0), ArgumentError);
    CHECK_THROWS_AS(design_feedback_filter(flat_weighting(8), 21, 0.0), ArgumentError);
}

TEST_CASE("objective never worse than no shaping and first-order optimal") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        WeightingFunction w = flat_weighting(512);
        for (double& v : w.weight) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
        double wsum = 0.0;
        for (double v : w.weight) wsum += v * v;
        if (wsum == 0.0) continue;
        const NtfDesign d = design_feedback_filter(w, 7, 1e-10);
        const double obj = objective_oracle(w, d.taps);
        CHECK(d.objective_value == doctest::Approx(obj).epsilon(1e-6));
        CHECK(obj <= wsum * (1.0 + 1e-12));
        for (std::size_t k = 0; k < d.taps.size(); ++k) {
            for (double delta : {1e-3, -1e-3}) {
                std::vector<double> g = d.taps;
                g[k] += delta;
                CHECK(objective_oracle(w, g) >= obj * (1.0 - 1e-9));
            }
        }
    }
}

TEST_CASE("ntf zeros are the companion roots of the monic polynomial") {
    WeightingFunction w = flat_weighting(1024);
    for (std::size_t i = 0; i < w.freqs_hz.size(); ++i)
        w.weight[i] = (w.freqs_hz[i] < 0.4 * w.f_nyquist_hz) ? 1.0 : 0.0;
    const NtfDesign d = design_feedback_filter(w, 6, 0.0);
    REQUIRE(d.ntf_zeros.size() == 6);
    for (const cplx& z : d.ntf_zeros) {
        cplx poly(1.0, 0.0);
        cplx zk(1.0, 0.0);
        for (std::size_t k = 0; k < d.taps.size(); ++k) {
            zk /= z;
            poly += d.taps[k] * zk;
        }
        CHECK(std::abs(poly) < 1e-8);
    }
}

TEST_CASE("plain quantization when the loop is disabled") {
    Rng rng(9);
    std::vector<double> x(256);
    for (double& v : x) v = rng.gaussian();
    NtfDesign d; // no taps
    const QuantizerSpec q{3, 3.0};
    const ShapeTrace t = shape(x, d, q, {100.0, 100.0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(t.y[i] == doctest::Approx(quantize(x[i], q)));
        CHECK(t.epsilon[i] == doctest::Approx(t.y[i] - x[i]));
    }
    CHECK(t.clip1_count == 0);
    CHECK(t.clip2_count == 0);
}

TEST_CASE("hand-executed recurrence for zero input") {
    NtfDesign d;
    d.taps = {-0.5};
    const QuantizerSpec q{2, 1.0};
    std::vector<double> x(5, 0.0);
    const ShapeTrace t = shape(x, d, q, {10.0, 10.0});
    // independent re-execution of the loop
    double eps_prev = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double v = 0.0 + (-0.5) * eps_prev;
        const double y = quantize(v, q);
        CHECK(t.y[n] == doctest::Approx(y));
        CHECK(t.epsilon[n] == doctest::Approx(y - v));
        eps_prev = y - v;
    }
    CHECK(t.y[0] == doctest::Approx(0.25)); // tie-break rounds up at v = 0
    CHECK(t.epsilon[0] == doctest::Approx(0.25));
}

TEST_CASE("spectral identity of the noise-shaping loop") {
    Rng rng(11);
    const std::size_t n = 4096;
    std::vector<double> x(n);
    for (double& v : x) v = rng.gaussian();
    NtfDesign d;
    d.taps = {-0.5, 0.2, 0.1};
    const QuantizerSpec q{3, 4.0};
    const ShapeTrace t = shape(x, d, q, {1e9, 1e9}); // clipping disabled in effect
    CHECK(t.clip1_count == 0);
    CHECK(t.clip2_count == 0);

    const std::size_t K = d.taps.size();
    const std::size_t m = n + K;
    std::vector<cplx> err(m, 0.0), eps(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        err[i] = t.y[i] - x[i];
        eps[i] = t.epsilon[i];
    }
    // the loop's filter keeps ringing for K samples past the input
    for (std::size_t i = n; i < m; ++i) {
        double tail = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (i >= k + 1 && i - k - 1 < n) tail += d.taps[k] * t.epsilon[i - k - 1];
        err[i] = tail;
    }
    const auto fe = fft(err);
    const auto fx = fft(eps);
    double max_mag = 0.0;
    for (const cplx& v : fe) max_mag = std::max(max_mag, std::abs(v));
    for (std::size_t b = 0; b < m; ++b) {
        const double omega = 2.0 * M_PI * double(b) / double(m);
        const cplx want = fx[b] * d.ntf_response(omega);
        CHECK(std::abs(fe[b] - want) / max_mag < 1e-9);
    }
}

TEST_CASE("clipping monotonicity in clip2") {
    Rng rng(13);
    std::vector<double> x(4096);
    for (double& v : x) v = rng.gaussian();
    NtfDesign d;
    d.taps = {-1.2, 0.8, -0.4, 0.3};
    const QuantizerSpec q{2, 1.0};
    std::uint64_t prev = ~0ull;
    for (double clip2 : {0.1, 0.3, 0.6, 1.0, 2.0, 5.0}) {
        const ShapeTrace t = shape(x, d, q, {2.5, clip2});
        CHECK(t.clip2_count <= prev);
        prev = t.clip2_count;
    }
}

TEST_CASE("shape rejects NaN input") {
    NtfDesign d;
    CHECK_THROWS_AS(shape({0.0, std::nan("")}, d, {2, 1.0}, {1.0, 1.0}), ArgumentError);
}

TEST_CASE("unshaped quantization error psd is flat-ish") {
    Rng rng(17);
    std::vector<double> x(1 << 16);
    for (double& v : x) v = rng.gaussian();
    NtfDesign d;
    const ShapeTrace t = shape(x, d, {3, 3.2}, {3.2, 3.2});
    const Psd psd = shaped_noise_psd(t, x, 1.0, 256);
    double lo = 1e300, hi = 0.0;
    // skip DC and Nyquist edges
    for (std::size_t i = 2; i + 2 < psd.psd.size(); ++i) {
        lo = std::min(lo, psd.psd[i]);
        hi = std::max(hi, psd.psd[i]);
    }
    CHECK(10.0 * std::log10(hi / lo) < 3.0);
    CHECK_THROWS_AS(shaped_noise_psd(t, std::vector<double>(3, 0.0), 1.0), ArgumentError);
}

TEST_CASE("weighting over the paper plan") {
    const FiberParams fiber{10e3, 17.0, 1550.0, 0.2};
    const BandPlan plan = plan_bands(fiber,
                                     {{ModFormat::PAM4, 30e9, 0.1, 1.0},
                                      {ModFormat::QAM16, 8.1e9, 0.1, 1.0},
                                      {ModFormat::QAM16, 6e9, 0.1, 1.0}},
                                     60e9);
    const WeightingFunction w = build_weighting(fiber, plan, 60e9, 4096);
    REQUIRE(w.freqs_hz.size() == 4096);
    for (std::size_t i = 0; i < w.freqs_hz.size(); ++i) {
        const double f = w.freqs_hz[i];
        if (plan.covers(f))
            CHECK(w.weight[i] == doctest::Approx(fading_magnitude(fiber, f)));
        else
            CHECK(w.weight[i] == 0.0);
    }
    // the first notch lies outside every occupied band
    const double f1 = notch_frequencies(fiber, 60e9).front();
    CHECK(!plan.covers(f1));

    FiberParams zero = fiber;
    zero.length_m = 0.0;
    BandPlan full;
    full.bands.push_back({ModFormat::PAM4, 109e9, 0.1, 1.0});
    const WeightingFunction flat = build_weighting(zero, full, 60e9, 512);
    for (double v : flat.weight) CHECK(v == doctest::Approx(1.0));

    CHECK_THROWS_AS(build_weighting(fiber, BandPlan{}, 60e9, 512), ArgumentError);
}
