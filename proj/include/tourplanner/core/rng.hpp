#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tourplanner {

// Deterministic generator with a pinned algorithm (splitmix64) so seeded
// outputs are stable across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(next_u64() % span);
    }

    // Uniform double in [lo, hi) from the top 53 bits.
    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
        return lo + u * (hi - lo);
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<size_t>(uniform_int(0, static_cast<int64_t>(items.size()) - 1))];
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i) - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    uint64_t state_;
};

// FNV-1a over raw bytes; used for request hashing and seed derivation.
inline uint64_t fnv1a64(const void* data, size_t n, uint64_t seed = 0xCBF29CE484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

inline uint64_t fnv1a64(const std::string& s, uint64_t seed = 0xCBF29CE484222325ull) {
    return fnv1a64(s.data(), s.size(), seed);
}

inline uint64_t fnv1a64(const char* s, uint64_t seed = 0xCBF29CE484222325ull) {
    return fnv1a64(std::string(s), seed);
}

} // namespace tourplanner
