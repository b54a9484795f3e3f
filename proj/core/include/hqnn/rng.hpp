#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hqnn {

// SplitMix64 finalizer. Used to derive independent stream seeds from a
// master seed so that parallel and serial execution consume identical
// random sequences.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(splitmix64(seed) ^ splitmix64(salt));
}

// FNV-1a, for folding strings (dataset names) into seed derivations.
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic RNG wrapper. All draws go through the helpers below so the
// produced streams do not depend on library distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Multiply-shift reduction.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

  private:
    std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by Rng.
template <class T> void shuffle(std::vector<T> &v, Rng &rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng.uniform_index(i);
        std::swap(v[i - 1], v[j]);
    }
}

// Identity permutation of length n, shuffled with the given seed.
std::vector<int> seeded_permutation(std::size_t n, std::uint64_t seed);

} // namespace hqnn
