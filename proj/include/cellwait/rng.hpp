#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cellwait {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream derivation for per-trial seeding: any partition of the trial index
// space yields the same per-trial draws.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t substream = 0) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ substream);
}

// mt19937_64 with hand-rolled variate transforms. std:: distributions are
// implementation-defined; these mappings pin the draw sequence to the
// standardized engine output so results are reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1), 53-bit resolution, never returns 1.0
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Exp(rate), mean 1/rate
    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    // Poisson(mean): sequential inversion for small means, Hormann's PTRS
    // transformed rejection for large ones.
    long poisson(double mean) {
        if (mean < 10.0) return poisson_inversion(mean);
        return poisson_ptrs(mean);
    }

private:
    long poisson_inversion(double mean) {
        const double target = uniform01();
        double p = std::exp(-mean);
        double cum = p;
        long k = 0;
        while (target > cum && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
        }
        return k;
    }

    long poisson_ptrs(double mean) {
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            const double u = uniform01() - 0.5;
            const double v = uniform01();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            const double k = kf;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                k * log_mean - mean - std::lgamma(k + 1.0)) {
                return static_cast<long>(kf);
            }
        }
    }

    std::mt19937_64 eng_;
};

} // namespace cellwait
