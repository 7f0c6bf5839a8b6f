#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace starcache {

/// Deterministic random stream. All draws go through hand-rolled transforms of
/// the mt19937_64 engine so that a (seed, call sequence) pair produces the same
/// values on every platform; std::*_distribution is implementation-defined and
/// is deliberately avoided.
class Rng {
public:
    explicit Rng(uint64_t seed) : base_seed_(seed), gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform integer in [0, n), rejection sampled to avoid modulo bias.
    uint64_t uniform_index(uint64_t n) {
        const uint64_t threshold = (0 - n) % n;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Derive an independent child stream. Children with distinct ids are
    /// decorrelated from the parent and from each other.
    Rng fork(uint64_t stream_id) const {
        return Rng(splitmix(base_seed_ + 0x9E3779B97F4A7C15ull * (stream_id + 1)));
    }

private:
    static uint64_t splitmix(uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    uint64_t base_seed_;
    std::mt19937_64 gen_;
};

}  // namespace starcache
