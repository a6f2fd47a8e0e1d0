#include "fuzzpoc/simd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fuzzpoc::simd::detail {

double weighted_cumulative_scalar(const double* y, const double* weight, std::size_t n,
                                  const PieceTable& pieces) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double cumulative = 0.0;
        for (std::size_t s = 0; s < pieces.count; ++s) {
            const double t = std::min(std::max(y[j] - pieces.x0[s], 0.0), pieces.len[s]);
            cumulative += t * (pieces.mu0[s] + pieces.half_slope[s] * t);
        }
        total += weight[j] * cumulative;
    }
    return total;
}

ChannelLoad interference_scalar(const double* distance, const double* channel,
                                const double* power_gain, std::size_t n, double victim_channel,
                                const double* ir_table, std::size_t ir_len, bool take_max) {
    ChannelLoad load;
    const auto limit = static_cast<double>(ir_len);
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = std::fabs(victim_channel - channel[i]);
        if (delta >= limit) continue;
        const double range = ir_table[static_cast<std::size_t>(delta)];
        const double d = distance[i];
        if (d > range) continue;
        load.power += power_gain[i];
        const double factor = d == 0.0 ? std::numeric_limits<double>::infinity() : range / d;
        load.factor = take_max ? std::max(load.factor, factor) : load.factor + factor;
    }
    return load;
}

}  // namespace fuzzpoc::simd::detail
