#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace adhoc {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derive a named sub-stream seed from a base seed. All randomness in the
/// toolkit fans out from one global seed through these named streams, so
/// individual components (layout, optimizer, simulator, ...) can be
/// re-seeded independently.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                                 std::uint64_t index = 0) {
    std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ull);
    for (unsigned char c : stream)
        h = mix64(h ^ (static_cast<std::uint64_t>(c) * 0xff51afd7ed558ccdull));
    return mix64(h ^ (index + 0x9e3779b97f4a7c15ull));
}

/// mt19937_64 wrapper with hand-rolled distributions. The standard
/// distributions are implementation-defined, so uniform draws, bounded
/// integers and shuffles are spelled out here to keep runs reproducible
/// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Unbiased integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace adhoc
