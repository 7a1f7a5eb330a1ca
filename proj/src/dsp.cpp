#include "pfans/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pfans/errors.hpp"
#include "pfans/fft.hpp"

namespace pfans {

Rational approximate_ratio(double x, std::int64_t max_den) {
    if (!(x > 0.0)) throw ArgumentError("approximate_ratio: ratio must be positive");
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(v);
        const std::int64_t a = static_cast<std::int64_t>(fl);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = v - fl;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    return {p1, q1};
}

namespace {
double bessel_i0(double x) {
    // power series, converges fast for the beta range used here
    double sum = 1.0, term = 1.0;
    const double hx = 0.5 * x;
    for (int k = 1; k < 64; ++k) {
        term *= (hx / k) * (hx / k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}
} // namespace

std::vector<double> kaiser_lowpass(double cutoff_norm, double transition_norm,
                                   double stopband_db) {
    if (!(cutoff_norm > 0.0 && cutoff_norm < 0.5))
        throw ArgumentError("kaiser_lowpass: cutoff out of (0, 0.5)");
    if (!(transition_norm > 0.0))
        throw ArgumentError("kaiser_lowpass: transition width must be positive");
    const double a = stopband_db;
    double beta = 0.0;
    if (a > 50.0)
        beta = 0.1102 * (a - 8.7);
    else if (a >= 21.0)
        beta = 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0);
    std::size_t n = static_cast<std::size_t>(std::ceil((a - 7.95) / (14.36 * transition_norm)));
    if (n % 2 == 0) ++n; // odd length, integer group delay
    const double mid = 0.5 * static_cast<double>(n - 1);
    const double i0b = bessel_i0(beta);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) - mid;
        const double sinc = (t == 0.0) ? 2.0 * cutoff_norm
                                       : std::sin(2.0 * M_PI * cutoff_norm * t) / (M_PI * t);
        const double r = t / mid;
        const double w = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0b;
        h[i] = sinc * w;
    }
    return h;
}

namespace {
template <typename T>
std::vector<T> filter_same_impl(const std::vector<T>& x, const std::vector<double>& taps) {
    if (taps.empty() || taps.size() % 2 == 0)
        throw ArgumentError("fir_filter_same: taps must be odd-length");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(taps.size());
    const std::ptrdiff_t d = (k - 1) / 2;
    std::vector<T> y(x.size(), T{});
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        T acc{};
        const std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(0, i + d - n + 1);
        const std::ptrdiff_t jhi = std::min<std::ptrdiff_t>(k - 1, i + d);
        for (std::ptrdiff_t j = jlo; j <= jhi; ++j) acc += taps[j] * x[i + d - j];
        y[i] = acc;
    }
    return y;
}

template <typename T>
std::vector<T> resample_impl(const std::vector<T>& x, double in_rate, double out_rate,
                             double stopband_db) {
    if (!(in_rate > 0.0 && out_rate > 0.0))
        throw ArgumentError("resample: rates must be positive");
    const Rational r = approximate_ratio(out_rate / in_rate);
    const std::int64_t L = r.num, M = r.den;
    if (L == M) return x;
    // prototype at the L-times-upsampled rate
    const double cutoff = 0.5 / static_cast<double>(std::max(L, M));
    const double trans = 0.1 * cutoff;
    std::vector<double> h = kaiser_lowpass(cutoff, trans, stopband_db);
    const std::int64_t hl = static_cast<std::int64_t>(h.size());
    const std::int64_t delay = (hl - 1) / 2;
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const std::int64_t n_out = (n * L) / M;
    std::vector<T> y(static_cast<std::size_t>(n_out), T{});
    for (std::int64_t m = 0; m < n_out; ++m) {
        const std::int64_t i = m * M + delay; // position in upsampled grid
        const std::int64_t phase = i % L;
        const std::int64_t base = i / L;
        T acc{};
        for (std::int64_t j = phase; j < hl; j += L) {
            const std::int64_t src = base - (j - phase) / L;
            if (src < 0) break;
            if (src >= n) continue;
            acc += h[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(src)];
        }
        y[static_cast<std::size_t>(m)] = static_cast<double>(L) * acc;
    }
    return y;
}
} // namespace

std::vector<double> fir_filter_same(const std::vector<double>& x,
                                    const std::vector<double>& taps) {
    return filter_same_impl(x, taps);
}
std::vector<cplx> fir_filter_same(const std::vector<cplx>& x,
                                  const std::vector<double>& taps) {
    return filter_same_impl(x, taps);
}

std::vector<double> resample(const std::vector<double>& x, double in_rate,
                             double out_rate, double stopband_db) {
    return resample_impl(x, in_rate, out_rate, stopband_db);
}
std::vector<cplx> resample(const std::vector<cplx>& x, double in_rate,
                           double out_rate, double stopband_db) {
    return resample_impl(x, in_rate, out_rate, stopband_db);
}

Psd welch_psd(const std::vector<double>& x, double rate_hz, std::size_t nfft) {
    if (x.empty()) throw ArgumentError("welch_psd: empty input");
    if (x.size() < nfft) nfft = x.size();
    if (nfft < 8) throw ArgumentError("welch_psd: input too short");
    std::vector<double> win(nfft);
    double u = 0.0;
    for (std::size_t i = 0; i < nfft; ++i) {
        win[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(nfft));
        u += win[i] * win[i];
    }
    const std::size_t hop = nfft / 2;
    const std::size_t nbins = nfft / 2 + 1;
    std::vector<double> acc(nbins, 0.0);
    std::size_t nseg = 0;
    for (std::size_t start = 0; start + nfft <= x.size(); start += hop) {
        std::vector<cplx> seg(nfft);
        for (std::size_t i = 0; i < nfft; ++i) seg[i] = x[start + i] * win[i];
        const std::vector<cplx> spec = fft(seg);
        for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(spec[k]);
        ++nseg;
    }
    const double scale = 1.0 / (rate_hz * u * static_cast<double>(nseg));
    Psd out;
    out.freqs_hz.resize(nbins);
    out.psd.resize(nbins);
    for (std::size_t k = 0; k < nbins; ++k) {
        out.freqs_hz[k] = rate_hz * static_cast<double>(k) / static_cast<double>(nfft);
        // one-sided: fold negative frequencies except at DC and Nyquist
        const bool edge = (k == 0) || (k == nfft / 2);
        out.psd[k] = acc[k] * scale * (edge ? 1.0 : 2.0);
    }
    return out;
}

double tone_amplitude(const std::vector<double>& x, double rate_hz, double f_hz) {
    // least-squares fit of a*cos + b*sin at f
    double cc = 0, ss = 0, cs = 0, xc = 0, xs = 0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double ph = 2.0 * M_PI * f_hz * static_cast<double>(n) / rate_hz;
        const double c = std::cos(ph), s = std::sin(ph);
        cc += c * c; ss += s * s; cs += c * s;
        xc += x[n] * c; xs += x[n] * s;
    }
    const double det = cc * ss - cs * cs;
    if (std::abs(det) < 1e-12) return 0.0;
    const double a = (xc * ss - xs * cs) / det;
    const double b = (xs * cc - xc * cs) / det;
    return std::hypot(a, b);
}

double rms(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

} // namespace pfans
