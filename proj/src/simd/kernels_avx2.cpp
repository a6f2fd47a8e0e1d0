// Built with -mavx2 -mfma; only reached through the dispatch table after a
// runtime CPU check.
#include "fuzzpoc/simd.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fuzzpoc::simd::detail {

namespace {

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double weighted_cumulative_avx2(const double* y, const double* weight, std::size_t n,
                                const PieceTable& pieces) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = zero;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d yj = _mm256_loadu_pd(y + j);
        __m256d cumulative = zero;
        for (std::size_t s = 0; s < pieces.count; ++s) {
            const __m256d x0 = _mm256_broadcast_sd(pieces.x0 + s);
            const __m256d len = _mm256_broadcast_sd(pieces.len + s);
            const __m256d mu0 = _mm256_broadcast_sd(pieces.mu0 + s);
            const __m256d hs = _mm256_broadcast_sd(pieces.half_slope + s);
            const __m256d t = _mm256_min_pd(_mm256_max_pd(_mm256_sub_pd(yj, x0), zero), len);
            cumulative = _mm256_fmadd_pd(t, _mm256_fmadd_pd(hs, t, mu0), cumulative);
        }
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(weight + j), cumulative, acc);
    }
    double total = horizontal_sum(acc);
    if (j < n) {
        total += weighted_cumulative_scalar(y + j, weight + j, n - j, pieces);
    }
    return total;
}

ChannelLoad interference_avx2(const double* distance, const double* channel,
                              const double* power_gain, std::size_t n, double victim_channel,
                              const double* ir_table, std::size_t ir_len, bool take_max) {
    if (ir_len == 0) return {};
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d victim = _mm256_set1_pd(victim_channel);
    const __m256d limit = _mm256_set1_pd(static_cast<double>(ir_len));
    const __m256d last_index = _mm256_set1_pd(static_cast<double>(ir_len - 1));
    const __m256d zero = _mm256_setzero_pd();
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());

    __m256d power = zero;
    __m256d factor = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_loadu_pd(distance + i);
        const __m256d delta = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(victim, _mm256_loadu_pd(channel + i)));
        const __m256d overlapping = _mm256_cmp_pd(delta, limit, _CMP_LT_OQ);
        const __m128i index = _mm256_cvttpd_epi32(_mm256_min_pd(delta, last_index));
        const __m256d range = _mm256_i32gather_pd(ir_table, index, 8);
        const __m256d gate = _mm256_and_pd(overlapping, _mm256_cmp_pd(d, range, _CMP_LE_OQ));
        power = _mm256_add_pd(power, _mm256_and_pd(gate, _mm256_loadu_pd(power_gain + i)));
        const __m256d ratio = _mm256_blendv_pd(_mm256_div_pd(range, d), inf, _mm256_cmp_pd(d, zero, _CMP_EQ_OQ));
        const __m256d gated = _mm256_and_pd(gate, ratio);
        factor = take_max ? _mm256_max_pd(factor, gated) : _mm256_add_pd(factor, gated);
    }
    ChannelLoad load{horizontal_sum(power), take_max ? horizontal_max(factor) : horizontal_sum(factor)};
    if (i < n) {
        const ChannelLoad tail = interference_scalar(distance + i, channel + i, power_gain + i, n - i,
                                                     victim_channel, ir_table, ir_len, take_max);
        load.power += tail.power;
        load.factor = take_max ? std::max(load.factor, tail.factor) : load.factor + tail.factor;
    }
    return load;
}

}  // namespace fuzzpoc::simd::detail
