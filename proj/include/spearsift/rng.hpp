#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace spearsift {

// Seeded random source with portable helpers. std::mt19937_64 is fully
// specified by the standard; the distribution helpers below are hand-rolled
// so that the same seed produces the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n). Rejection sampling, no modulo bias.
    std::size_t uniform_index(std::size_t n);

    // Fisher-Yates shuffle driven by uniform_index.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a over a byte string.
std::uint64_t fnv1a64(std::string_view text);

// Derives an independent stream seed from a master seed and a purpose tag,
// so that e.g. splitting and forging never share a random stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

}  // namespace spearsift
