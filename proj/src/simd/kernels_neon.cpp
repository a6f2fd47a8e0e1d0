// AArch64 variants. Two doubles per register; same structure as the AVX2 path.
#include "fuzzpoc/simd.hpp"

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fuzzpoc::simd::detail {

double weighted_cumulative_neon(const double* y, const double* weight, std::size_t n,
                                const PieceTable& pieces) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    float64x2_t acc = zero;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t yj = vld1q_f64(y + j);
        float64x2_t cumulative = zero;
        for (std::size_t s = 0; s < pieces.count; ++s) {
            const float64x2_t t = vminq_f64(vmaxq_f64(vsubq_f64(yj, vdupq_n_f64(pieces.x0[s])), zero),
                                            vdupq_n_f64(pieces.len[s]));
            const float64x2_t inner = vfmaq_f64(vdupq_n_f64(pieces.mu0[s]), vdupq_n_f64(pieces.half_slope[s]), t);
            cumulative = vfmaq_f64(cumulative, t, inner);
        }
        acc = vfmaq_f64(acc, vld1q_f64(weight + j), cumulative);
    }
    double total = vaddvq_f64(acc);
    if (j < n) {
        total += weighted_cumulative_scalar(y + j, weight + j, n - j, pieces);
    }
    return total;
}

ChannelLoad interference_neon(const double* distance, const double* channel,
                              const double* power_gain, std::size_t n, double victim_channel,
                              const double* ir_table, std::size_t ir_len, bool take_max) {
    if (ir_len == 0) return {};
    const float64x2_t victim = vdupq_n_f64(victim_channel);
    const float64x2_t limit = vdupq_n_f64(static_cast<double>(ir_len));
    const float64x2_t last_index = vdupq_n_f64(static_cast<double>(ir_len - 1));
    const float64x2_t zero = vdupq_n_f64(0.0);
    const float64x2_t inf = vdupq_n_f64(std::numeric_limits<double>::infinity());

    float64x2_t power = zero;
    float64x2_t factor = zero;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vld1q_f64(distance + i);
        const float64x2_t delta = vabsq_f64(vsubq_f64(victim, vld1q_f64(channel + i)));
        const uint64x2_t overlapping = vcltq_f64(delta, limit);
        const uint64x2_t index = vcvtq_u64_f64(vminq_f64(delta, last_index));
        const double lanes[2] = {ir_table[vgetq_lane_u64(index, 0)], ir_table[vgetq_lane_u64(index, 1)]};
        const float64x2_t range = vld1q_f64(lanes);
        const uint64x2_t gate = vandq_u64(overlapping, vcleq_f64(d, range));
        power = vaddq_f64(power, vreinterpretq_f64_u64(vandq_u64(gate, vreinterpretq_u64_f64(vld1q_f64(power_gain + i)))));
        const float64x2_t ratio = vbslq_f64(vceqq_f64(d, zero), inf, vdivq_f64(range, d));
        const float64x2_t gated = vreinterpretq_f64_u64(vandq_u64(gate, vreinterpretq_u64_f64(ratio)));
        factor = take_max ? vmaxq_f64(factor, gated) : vaddq_f64(factor, gated);
    }
    ChannelLoad load{vaddvq_f64(power), take_max ? vmaxvq_f64(factor) : vaddvq_f64(factor)};
    if (i < n) {
        const ChannelLoad tail = interference_scalar(distance + i, channel + i, power_gain + i, n - i,
                                                     victim_channel, ir_table, ir_len, take_max);
        load.power += tail.power;
        load.factor = take_max ? std::max(load.factor, tail.factor) : load.factor + tail.factor;
    }
    return load;
}

}  // namespace fuzzpoc::simd::detail
