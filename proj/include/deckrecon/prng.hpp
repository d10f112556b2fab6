#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace deckrecon {

// All randomness in the project flows through these helpers so that a seed
// fixes every byte of output. std::mt19937_64 has a fully specified stream;
// the distribution helpers below avoid std::uniform_* (whose mapping is
// implementation-defined).
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

/// True with probability num/den. Modulo bias is < den / 2^64.
inline bool bernoulli_ratio(Rng& rng, std::uint64_t num, std::uint64_t den) {
    return bounded(rng, den) < num;
}

/// k distinct indices from [0, n), in selection order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k && i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded(rng, n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

template <typename T>
inline void shuffle_deterministic(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace deckrecon
