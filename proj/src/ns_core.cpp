#include "pfans/ns_core.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "pfans/errors.hpp"

namespace pfans {

cplx NtfDesign::ntf_response(double omega) const {
    cplx acc(1.0, 0.0);
    for (std::size_t k = 0; k < taps.size(); ++k)
        acc += taps[k] * std::exp(cplx(0.0, -omega * static_cast<double>(k + 1)));
    return acc;
}

WeightingFunction build_weighting(const FiberParams& fiber, const BandPlan& plan,
                                  double f_nyquist_hz, std::size_t grid_size) {
    if (grid_size < 2) throw ArgumentError("build_weighting: grid too small");
    if (plan.bands.empty()) throw ArgumentError("build_weighting: empty band plan");
    WeightingFunction w;
    w.f_nyquist_hz = f_nyquist_hz;
    w.freqs_hz.resize(grid_size);
    w.weight.resize(grid_size);
    bool any_positive = false;
    for (std::size_t i = 0; i < grid_size; ++i) {
        // midpoint grid: flat weighting then has the exact minimizer g = 0
        const double f = (static_cast<double>(i) + 0.5) * f_nyquist_hz /
                         static_cast<double>(grid_size);
        w.freqs_hz[i] = f;
        w.weight[i] = plan.covers(f) ? fading_magnitude(fiber, f) : 0.0;
        if (w.weight[i] > 0.0) any_positive = true;
    }
    if (!any_positive) throw ArgumentError("build_weighting: degenerate (all-zero) weighting");
    return w;
}

NtfDesign design_feedback_filter(const WeightingFunction& weighting, std::size_t taps,
                                 double ridge) {
    const std::size_t n = weighting.freqs_hz.size();
    const std::size_t K = taps;
    if (K < 1) throw ArgumentError("design_feedback_filter: need at least one tap");
    if (ridge < 0.0) throw ArgumentError("design_feedback_filter: ridge must be >= 0");
    if (n < 2 * K) throw ArgumentError("design_feedback_filter: grid smaller than 2x tap count");
    if (weighting.weight.size() != n)
        throw ArgumentError("design_feedback_filter: weighting grid size mismatch");

    // residual_i = W_i (1 + sum_k g_k e^{-j w_i k}); stack Re/Im rows
    Eigen::MatrixXd a(2 * n, K);
    Eigen::VectorXd b(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double wgt = weighting.weight[i];
        const double omega = M_PI * weighting.freqs_hz[i] / weighting.f_nyquist_hz;
        for (std::size_t k = 0; k < K; ++k) {
            const double kw = omega * static_cast<double>(k + 1);
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = wgt * std::cos(kw);
            a(static_cast<Eigen::Index>(n + i), static_cast<Eigen::Index>(k)) = -wgt * std::sin(kw);
        }
        b(static_cast<Eigen::Index>(i)) = -wgt;
        b(static_cast<Eigen::Index>(n + i)) = 0.0;
    }
    Eigen::MatrixXd normal = a.transpose() * a;
    normal.diagonal().array() += ridge;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("design_feedback_filter: normal system factorization failed; "
                             "try ridge > 0");
    Eigen::VectorXd g = ldlt.solve(a.transpose() * b);
    const double residual = (a * g - b).squaredNorm();
    if (ridge == 0.0) {
        // singularity check: the LDLT of a rank-deficient system yields a poor solve
        const double check = (normal * g - a.transpose() * b).norm();
        const double scale = std::max(1.0, (a.transpose() * b).norm());
        if (!(check / scale < 1e-6))
            throw NumericalError("design_feedback_filter: singular normal system; try ridge > 0");
    }

    NtfDesign design;
    design.taps.assign(g.data(), g.data() + g.size());
    design.objective_value = residual;
    design.grid_size = n;
    design.f_nyquist_hz = weighting.f_nyquist_hz;

    // zeros of 1 + G: roots of z^K + g_1 z^{K-1} + ... + g_K (companion matrix)
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(K),
                                                 static_cast<Eigen::Index>(K));
    for (std::size_t k = 0; k + 1 < K; ++k)
        comp(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = 1.0;
    for (std::size_t k = 0; k < K; ++k)
        comp(0, static_cast<Eigen::Index>(k)) = -design.taps[k];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    design.ntf_zeros.reserve(K);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        design.ntf_zeros.push_back(es.eigenvalues()(i));
    std::sort(design.ntf_zeros.begin(), design.ntf_zeros.end(),
              [](const cplx& lhs, const cplx& rhs) {
                  return std::arg(lhs) < std::arg(rhs);
              });
    return design;
}

double quantize(double v, const QuantizerSpec& q) {
    const double a = q.full_scale;
    const double n_levels = std::ldexp(1.0, q.bits);
    const double delta = 2.0 * a / n_levels;
    double idx = std::floor((v + a) / delta);
    idx = std::clamp(idx, 0.0, n_levels - 1.0);
    return -a + 0.5 * delta + idx * delta;
}

namespace {
double clip(double v, double level) { return std::clamp(v, -level, level); }
} // namespace

ShapeTrace shape(const std::vector<double>& x, const NtfDesign& design,
                 const QuantizerSpec& q, const ClipSpec& clips) {
    if (q.bits < 1) throw ArgumentError("shape: quantizer needs bits >= 1");
    if (!(clips.clip1_level > 0.0 && clips.clip2_level > 0.0))
        throw ArgumentError("shape: clip levels must be positive");
    for (double v : x)
        if (!std::isfinite(v)) throw ArgumentError("shape: non-finite input sample");

    const std::size_t n = x.size();
    const std::size_t K = design.taps.size();
    ShapeTrace trace;
    trace.y.resize(n);
    trace.epsilon.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = x[i];
        if (std::abs(u) > clips.clip1_level) {
            u = clip(u, clips.clip1_level);
            ++trace.clip1_count;
        }
        double fb = 0.0;
        for (std::size_t k = 0; k < K && k < i; ++k)
            fb += design.taps[k] * trace.epsilon[i - 1 - k];
        if (std::abs(fb) > clips.clip2_level) {
            fb = clip(fb, clips.clip2_level);
            ++trace.clip2_count;
        }
        const double v = u + fb;
        const double y = quantize(v, q);
        trace.y[i] = y;
        trace.epsilon[i] = y - v;
    }
    return trace;
}

Psd shaped_noise_psd(const ShapeTrace& trace, const std::vector<double>& x,
                     double rate_hz, std::size_t nfft) {
    if (trace.y.size() != x.size())
        throw ArgumentError("shaped_noise_psd: length mismatch");
    if (x.empty()) throw ArgumentError("shaped_noise_psd: empty input");
    std::vector<double> err(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) err[i] = trace.y[i] - x[i];
    return welch_psd(err, rate_hz, nfft);
}

} // namespace pfans
