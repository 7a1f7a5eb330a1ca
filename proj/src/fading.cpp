#include "pfans/fading.hpp"

#include <algorithm>
#include <cmath>

#include "pfans/errors.hpp"

namespace pfans {

void FiberParams::validate() const {
    if (length_m < 0.0) throw ArgumentError("fiber: length must be >= 0");
    if (dispersion_ps_nm_km <= 0.0) throw ArgumentError("fiber: dispersion must be > 0");
    if (wavelength_nm <= 0.0) throw ArgumentError("fiber: wavelength must be > 0");
    if (attenuation_db_km < 0.0) throw ArgumentError("fiber: attenuation must be >= 0");
}

std::string format_name(ModFormat f) { return f == ModFormat::PAM4 ? "pam4" : "qam16"; }

ModFormat parse_format(const std::string& name) {
    if (name == "pam4" || name == "PAM4") return ModFormat::PAM4;
    if (name == "qam16" || name == "16qam" || name == "QAM16") return ModFormat::QAM16;
    throw ArgumentError("unknown modulation format: " + name);
}

namespace {
// pi * lambda^2 * D * L / c, the quadratic-phase coefficient of the cosine
double fading_coeff(const FiberParams& fiber) {
    const double lam = fiber.wavelength_m();
    return M_PI * lam * lam * fiber.dispersion_si() * fiber.length_m / kLightSpeed;
}
} // namespace

double fading_magnitude(const FiberParams& fiber, double f_hz) {
    return std::abs(std::cos(fading_coeff(fiber) * f_hz * f_hz));
}

FadingResponse power_fading_response(const FiberParams& fiber,
                                     const std::vector<double>& freqs_hz) {
    fiber.validate();
    for (std::size_t i = 1; i < freqs_hz.size(); ++i)
        if (!(freqs_hz[i] > freqs_hz[i - 1]))
            throw ArgumentError("power_fading_response: frequency grid must be ascending");
    FadingResponse out;
    out.freqs_hz = freqs_hz;
    out.magnitude.reserve(freqs_hz.size());
    for (double f : freqs_hz) out.magnitude.push_back(fading_magnitude(fiber, f));
    return out;
}

std::vector<double> notch_frequencies(const FiberParams& fiber, double f_max_hz) {
    fiber.validate();
    if (!(f_max_hz > 0.0)) throw ArgumentError("notch_frequencies: f_max must be > 0");
    std::vector<double> notches;
    if (fiber.length_m == 0.0) return notches;
    const double coeff = fading_coeff(fiber);
    for (int k = 1;; ++k) {
        const double fk = std::sqrt((2.0 * k - 1.0) * M_PI / (2.0 * coeff));
        if (fk > f_max_hz) break;
        notches.push_back(fk);
    }
    return notches;
}

bool BandPlan::covers(double f_hz) const {
    return std::any_of(bands.begin(), bands.end(), [f_hz](const BandSpec& b) {
        return f_hz >= b.lo_hz() && f_hz <= b.hi_hz();
    });
}

void BandPlan::validate(const FiberParams& fiber, double f_nyquist) const {
    for (const BandSpec& b : bands) {
        if (!(b.power_weight > 0.0)) throw ArgumentError("band plan: power_weight must be > 0");
        if (b.lo_hz() < 0.0 || b.hi_hz() > f_nyquist)
            throw ArgumentError("band plan: occupied interval outside [0, f_nyquist]");
    }
    for (std::size_t i = 0; i < bands.size(); ++i)
        for (std::size_t j = i + 1; j < bands.size(); ++j) {
            if (bands[i].lo_hz() < bands[j].hi_hz() && bands[j].lo_hz() < bands[i].hi_hz())
                throw ArgumentError("band plan: occupied intervals overlap");
        }
    for (double fn : notch_frequencies(fiber, f_nyquist))
        if (covers(fn)) throw ArgumentError("band plan: occupied interval contains a fading notch");
}

BandPlan plan_bands(const FiberParams& fiber, const std::vector<BandRequest>& requests,
                    double f_nyquist_hz, double guard_hz) {
    fiber.validate();
    if (requests.empty()) throw ArgumentError("plan_bands: no requests");
    for (std::size_t i = 1; i < requests.size(); ++i)
        if (requests[i].baud_hz > requests[i - 1].baud_hz)
            throw ArgumentError("plan_bands: requests must be sorted by descending baud");

    const std::vector<double> notches = notch_frequencies(fiber, f_nyquist_hz);
    // passband edges: 0, notches..., nyquist
    std::vector<double> edges;
    edges.push_back(0.0);
    edges.insert(edges.end(), notches.begin(), notches.end());
    edges.push_back(f_nyquist_hz);

    BandPlan plan;
    std::vector<std::pair<double, double>> taken; // occupied [lo, hi] incl. guard

    for (std::size_t r = 0; r < requests.size(); ++r) {
        const BandRequest& req = requests[r];
        const double bw = req.baud_hz * (1.0 + req.rolloff);
        BandSpec spec;
        spec.format = req.format;
        spec.baud_hz = req.baud_hz;
        spec.rolloff = req.rolloff;
        spec.power_weight = req.power_weight;
        bool placed = false;
        if (r == 0) {
            // widest request sits at baseband
            spec.carrier_hz = 0.0;
            const double hi = 0.5 * bw;
            if (hi + guard_hz <= (notches.empty() ? f_nyquist_hz : notches.front())) {
                taken.emplace_back(0.0, hi + guard_hz);
                placed = true;
            }
        } else {
            for (std::size_t e = 0; e + 1 < edges.size() && !placed; ++e) {
                const double lo_edge = edges[e] + guard_hz;
                const double hi_edge = edges[e + 1] - guard_hz;
                if (hi_edge - lo_edge < bw) continue;
                // prefer the segment midpoint; fall back to packing left-to-
                // right after already-placed bands (several requests can share
                // one wide passband, e.g. a dispersion-free link)
                std::vector<double> candidates{0.5 * (edges[e] + edges[e + 1]),
                                               lo_edge + 0.5 * bw};
                for (const std::pair<double, double>& t : taken)
                    candidates.push_back(t.second + guard_hz + 0.5 * bw);
                for (double carrier : candidates) {
                    const double lo = carrier - 0.5 * bw;
                    const double hi = carrier + 0.5 * bw;
                    if (lo < lo_edge || hi > hi_edge) continue;
                    const bool clash =
                        std::any_of(taken.begin(), taken.end(),
                                    [lo, hi, guard_hz](const std::pair<double, double>& t) {
                                        return lo < t.second + guard_hz &&
                                               t.first - guard_hz < hi;
                                    });
                    if (clash) continue;
                    spec.carrier_hz = carrier;
                    taken.emplace_back(lo, hi);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed)
            throw PlanningError("plan_bands: request " + std::to_string(r) + " (" +
                                format_name(req.format) + ", " +
                                std::to_string(req.baud_hz / 1e9) + " GBd) fits in no passband");
        plan.bands.push_back(spec);
    }
    plan.validate(fiber, f_nyquist_hz);
    return plan;
}

} // namespace pfans
