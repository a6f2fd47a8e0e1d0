#pragma once
// Named seed streams. Every random draw in the simulator goes through a
// stream derived from the master seed plus a tag and indices.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace fuzzpoc {

std::uint64_t splitmix64(std::uint64_t x);

/// Mixes a master seed, a tag and any number of indices into a stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices = {});

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace fuzzpoc
