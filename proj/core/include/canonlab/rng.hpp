#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace canonlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Child seed for a named component of a run. Every random draw in an
/// experiment flows from the single root seed; the component index is mixed
/// into the root so that streams never collide. Component indices are part
/// of the reproducibility contract (see README).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t component) {
    return splitmix64(splitmix64(root) ^ splitmix64(component + 1));
}

/// mt19937_64 with an explicit uint64->double mapping so the double stream is
/// identical across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace canonlab
