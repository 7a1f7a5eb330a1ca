#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pfans/dsp.hpp"
#include "pfans/errors.hpp"
#include "pfans/rng.hpp"
#include "pfans/txdsp.hpp"

using namespace pfans;

TEST_CASE("bit generation is deterministic and balanced") {
    CHECK(generate_bits(0, 1).empty());
    const auto a = generate_bits(1000, 42);
    const auto b = generate_bits(1000, 42);
    CHECK(a == b);
    const auto c = generate_bits(1000, 43);
    CHECK(a != c);
    const auto big = generate_bits(1000000, 7);
    std::size_t ones = 0;
    for (auto bit : big) ones += bit;
    const double frac = double(ones) / 1e6;
    CHECK(frac > 0.497);
    CHECK(frac < 0.503);
}

TEST_CASE("gray mapping tables") {
    const auto pam = map_pam4({0, 0, 1, 0});
    REQUIRE(pam.size() == 2);
    CHECK(pam[0] == doctest::Approx(-3.0 / std::sqrt(5.0)));
    CHECK(pam[1] == doctest::Approx(+3.0 / std::sqrt(5.0)));
    const auto qam = map_16qam({0, 0, 0, 0});
    REQUIRE(qam.size() == 1);
    CHECK(qam[0].real() == doctest::Approx(-3.0 / std::sqrt(10.0)));
    CHECK(qam[0].imag() == doctest::Approx(-3.0 / std::sqrt(10.0)));
    CHECK(map_pam4({}).empty());
    CHECK_THROWS_AS(map_pam4({1}), ArgumentError);
    CHECK_THROWS_AS(map_16qam({1, 0, 1}), ArgumentError);
}

TEST_CASE("mapping bijectivity") {
    const auto bits = generate_bits(4000, 99);
    CHECK(demap_pam4(map_pam4(bits)) == bits);
    CHECK(demap_16qam(map_16qam(bits)) == bits);
}

TEST_CASE("rrc taps: closed form, symmetry, nyquist cascade") {
    const double beta = 0.1;
    const std::size_t span = 32, sps = 2;
    const auto taps = rrc_taps(beta, span, sps);
    REQUIRE(taps.size() == span * sps + 1);
    // center value of the closed form before unit-energy normalization
    const double h0 = 1.0 + beta * (4.0 / M_PI - 1.0);
    CHECK(h0 == doctest::Approx(1.02732).epsilon(1e-4));
    // the normalized taps must be proportional to the closed form
    double energy = 0.0;
    for (double v : taps) energy += v * v;
    CHECK(energy == doctest::Approx(1.0));
    // ratio of center to half-symbol tap matches the closed form
    const double t_half = 0.5;
    const double h_half = (std::sin(M_PI * t_half * (1.0 - beta)) +
                           4.0 * beta * t_half * std::cos(M_PI * t_half * (1.0 + beta))) /
                          (M_PI * t_half * (1.0 - 16.0 * beta * beta * t_half * t_half));
    const std::size_t mid = taps.size() / 2;
    CHECK(taps[mid] / taps[mid + 1] == doctest::Approx(h0 / h_half).epsilon(1e-9));
    for (std::size_t i = 0; i < taps.size(); ++i)
        CHECK(taps[i] == doctest::Approx(taps[taps.size() - 1 - i]));

    // raised cosine = RRC * RRC, sampled at symbol instants, is ISI-free
    std::vector<double> rc(2 * taps.size() - 1, 0.0);
    for (std::size_t i = 0; i < taps.size(); ++i)
        for (std::size_t j = 0; j < taps.size(); ++j) rc[i + j] += taps[i] * taps[j];
    const std::size_t c = rc.size() / 2;
    // skip the outermost symbols, where truncation of the ideal impulse
    // response dominates the residual
    for (std::size_t k = 1; k + 2 <= span / 2; ++k) {
        CHECK(std::abs(rc[c + k * sps]) < 1e-3 * rc[c]);
        CHECK(std::abs(rc[c - k * sps]) < 1e-3 * rc[c]);
    }
}

TEST_CASE("shape_and_resample rates and lengths") {
    SymbolFrame frame = make_frame(ModFormat::PAM4, 1000, 0, 5);
    const ComplexWaveform w = shape_and_resample(frame, 0.1, 30e9, 120e9);
    CHECK(w.rate_hz == 120e9);
    CHECK(std::abs(double(w.samples.size()) - 4000.0) <= 1.0);

    SymbolFrame zeros = frame;
    for (auto& s : zeros.symbols) s = 0.0;
    const ComplexWaveform z = shape_and_resample(zeros, 0.1, 30e9, 120e9);
    for (const cplx& v : z.samples) CHECK(std::abs(v) == 0.0);

    CHECK_THROWS_AS(shape_and_resample(frame, 0.1, 30e9, 20e9), ArgumentError);
}

TEST_CASE("upconvert basics and spectral confinement") {
    ComplexWaveform bb;
    bb.rate_hz = 120e9;
    bb.samples.assign(512, cplx(1.0, 0.0));
    const RealWaveform tone = upconvert(bb, 20e9);
    for (std::size_t i = 0; i < tone.samples.size(); ++i)
        CHECK(tone.samples[i] ==
              doctest::Approx(std::cos(2.0 * M_PI * 20e9 * double(i) / 120e9)));

    SymbolFrame frame = make_frame(ModFormat::QAM16, 20000, 0, 6);
    const ComplexWaveform shaped = shape_and_resample(frame, 0.1, 8.1e9, 120e9);
    const RealWaveform pass = upconvert(shaped, 26e9);
    const Psd psd = welch_psd(pass.samples, 120e9, 2048);
    double inband = 0.0, outband = 0.0;
    std::size_t n_in = 0, n_out = 0;
    for (std::size_t i = 0; i < psd.freqs_hz.size(); ++i) {
        const double f = psd.freqs_hz[i];
        if (f > 26e9 - 4.5e9 && f < 26e9 + 4.5e9) {
            inband += psd.psd[i];
            ++n_in;
        } else if (f < 18e9 || f > 34e9) {
            outband += psd.psd[i];
            ++n_out;
        }
    }
    CHECK(10.0 * std::log10((inband / n_in) / (outband / n_out)) > 40.0);

    const ComplexWaveform tiny{std::vector<cplx>(16, cplx(0.1, 0.0)), 120e9};
    CHECK_THROWS_AS(upconvert(tiny, 70e9), ArgumentError);
}

TEST_CASE("fdm multiplex normalizes and balances") {
    RealWaveform a{std::vector<double>(8192), 120e9};
    RealWaveform b = a;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        a.samples[i] = std::sin(2.0 * M_PI * 5e9 * double(i) / 120e9);
        b.samples[i] = std::sin(2.0 * M_PI * 25e9 * double(i) / 120e9);
    }
    BandPlan plan;
    plan.bands.push_back({ModFormat::PAM4, 8e9, 0.0, 0.1, 1.0});
    plan.bands.push_back({ModFormat::QAM16, 8e9, 25e9, 0.1, 1.0});

    const RealWaveform mux = fdm_multiplex({a, b}, plan);
    CHECK(rms(mux.samples) == doctest::Approx(1.0));
    const double p1 = tone_amplitude(mux.samples, 120e9, 5e9);
    const double p2 = tone_amplitude(mux.samples, 120e9, 25e9);
    CHECK(20.0 * std::log10(p1 / p2) == doctest::Approx(0.0).epsilon(0.1));

    BandPlan single;
    single.bands.push_back(plan.bands[0]);
    const RealWaveform one = fdm_multiplex({a}, single);
    const double scale = a.samples[100] / one.samples[100];
    for (std::size_t i = 0; i < one.samples.size(); ++i)
        CHECK(one.samples[i] * scale == doctest::Approx(a.samples[i]).epsilon(1e-9));

    RealWaveform wrong = b;
    wrong.rate_hz = 60e9;
    CHECK_THROWS_AS(fdm_multiplex({a, wrong}, plan), ArgumentError);
}
