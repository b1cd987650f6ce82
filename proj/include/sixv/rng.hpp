#pragma once

// Deterministic random streams.  The distributions are written out by hand
// because the std:: ones are implementation-defined and would make output
// differ between standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

namespace sixv {

struct RngSeed {
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
};

class Rng {
public:
    explicit Rng(RngSeed s = {}) { reseed(s); }
    Rng(std::uint64_t seed, std::uint64_t stream) { reseed({seed, stream}); }

    void reseed(RngSeed s) {
        std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                          static_cast<std::uint32_t>(s.stream), static_cast<std::uint32_t>(s.stream >> 32),
                          0x6a09e667u};
        eng_.seed(seq);
        have_spare_ = false;
    }

    std::uint64_t bits() { return eng_(); }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    // uniform on (0,1)
    double uniform_open() {
        double u;
        do u = uniform();
        while (u == 0.0);
        return u;
    }

    // uniform integer in [0, m)
    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t v;
        do v = eng_();
        while (v >= lim);
        return v % m;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2 * uniform() - 1;
            v = 2 * uniform() - 1;
            s = u * u + v * v;
        } while (s >= 1 || s == 0);
        double f = std::sqrt(-2 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // P(X = m) = (1-p) p^(m-1), m >= 1: number of trials until the first
    // failure of a p-coin.
    std::uint64_t geometric_trials(double p) {
        if (p <= 0) return 1;
        double u = uniform_open();
        return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(p)));
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

}  // namespace sixv
