#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pfans {

// splitmix64, used to derive independent stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
    std::uint64_t s = master ^ (0xa076'1d64'78bd'642full * (stream_id + 1));
    return splitmix64(s);
}

// mt19937_64 with a hand-rolled Box-Muller gaussian so that the byte-exact
// reproducibility contract does not depend on the standard library's
// normal_distribution implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits64() { return eng_(); }

    bool bit() { return (eng_() >> 63) != 0; }

    // uniform on [0, 1)
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace pfans
