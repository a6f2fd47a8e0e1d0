#pragma once
// Data-parallel inner loops with a scalar reference implementation and
// vectorized variants chosen at runtime from the host CPU.
//
// Every variant must agree with the scalar reference up to summation-order
// rounding; tests/test_simd_kernels.cpp holds the equivalence checks.

#include <cstddef>
#include <string_view>

namespace fuzzpoc::simd {

enum class Level { scalar, avx2, neon };

std::string_view to_string(Level level);

// Linear pieces of a membership function in structure-of-arrays form. Piece s
// starts at x0[s], spans len[s] >= 0 and has value mu0[s] + 2*half_slope[s]*t
// at offset t from x0[s].
struct PieceTable {
    const double* x0 = nullptr;
    const double* len = nullptr;
    const double* mu0 = nullptr;
    const double* half_slope = nullptr;
    std::size_t count = 0;
};

// Sum over j of weight[j] * F(y[j]), where F is the cumulative integral of the
// piecewise-linear function described by `pieces`.
using WeightedCumulativeFn = double (*)(const double* y, const double* weight, std::size_t n,
                                        const PieceTable& pieces);

struct ChannelLoad {
    double power = 0.0;      // summed in-range interference power, watts
    double factor = 0.0;     // aggregated interference factor
};

// Range-gated interference seen on `victim_channel` from n transmissions.
// ir_table[delta] is the interference range for channel separation delta;
// separations >= ir_len are orthogonal.
using InterferenceFn = ChannelLoad (*)(const double* distance, const double* channel,
                                       const double* power_gain, std::size_t n,
                                       double victim_channel, const double* ir_table,
                                       std::size_t ir_len, bool take_max);

struct KernelTable {
    Level level;
    WeightedCumulativeFn weighted_cumulative;
    InterferenceFn interference;
};

bool supported(Level level);

// Best level for this CPU, honouring FUZZPOC_SIMD=scalar|avx2|neon when set.
Level detected_level();

const KernelTable& kernels_for(Level level);
const KernelTable& kernels();

// Overrides the active table for the whole process (tests and benchmarks).
void force_level(Level level);

namespace detail {
double weighted_cumulative_scalar(const double*, const double*, std::size_t, const PieceTable&);
ChannelLoad interference_scalar(const double*, const double*, const double*, std::size_t, double,
                                const double*, std::size_t, bool);
#if defined(FUZZPOC_HAVE_AVX2)
double weighted_cumulative_avx2(const double*, const double*, std::size_t, const PieceTable&);
ChannelLoad interference_avx2(const double*, const double*, const double*, std::size_t, double,
                              const double*, std::size_t, bool);
#endif
#if defined(FUZZPOC_HAVE_NEON)
double weighted_cumulative_neon(const double*, const double*, std::size_t, const PieceTable&);
ChannelLoad interference_neon(const double*, const double*, const double*, std::size_t, double,
                              const double*, std::size_t, bool);
#endif
}  // namespace detail

}  // namespace fuzzpoc::simd
