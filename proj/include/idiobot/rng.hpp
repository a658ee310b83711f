#pragma once

#include <cstdint>
#include <random>

namespace idiobot {

// Seeded random stream. All randomness in the library flows through this so
// that runs are reproducible from a single integer seed. Distribution helpers
// are hand-rolled on top of std::mt19937_64 because the standard library's
// distribution objects are implementation-defined and would break byte-exact
// reproducibility across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1), 53 bits of mantissa.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi], inclusive. Lemire's debiased multiply-shift.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * span;
        auto low = static_cast<std::uint64_t>(m);
        if (low < span) {
            const std::uint64_t threshold = (0 - span) % span;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * span;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return lo + static_cast<int>(m >> 64);
    }

    bool chance(double p) { return uniform01() < p; }

    // splitmix64 finalizer; used to derive independent child seeds.
    static std::uint64_t scramble(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        return scramble(a ^ scramble(b));
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return mix(mix(a, b), c);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                             std::uint64_t d) {
        return mix(mix(a, b, c), d);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace idiobot
