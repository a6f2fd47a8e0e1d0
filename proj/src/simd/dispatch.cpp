#include "fuzzpoc/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fuzzpoc::simd {

namespace {

constexpr KernelTable scalar_table{Level::scalar, detail::weighted_cumulative_scalar,
                                   detail::interference_scalar};
#if defined(FUZZPOC_HAVE_AVX2)
constexpr KernelTable avx2_table{Level::avx2, detail::weighted_cumulative_avx2,
                                 detail::interference_avx2};
#endif
#if defined(FUZZPOC_HAVE_NEON)
constexpr KernelTable neon_table{Level::neon, detail::weighted_cumulative_neon,
                                 detail::interference_neon};
#endif

std::atomic<const KernelTable*> active_table{nullptr};

Level best_supported() {
    if (supported(Level::avx2)) return Level::avx2;
    if (supported(Level::neon)) return Level::neon;
    return Level::scalar;
}

}  // namespace

std::string_view to_string(Level level) {
    switch (level) {
        case Level::scalar: return "scalar";
        case Level::avx2: return "avx2";
        case Level::neon: return "neon";
    }
    return "unknown";
}

bool supported(Level level) {
    switch (level) {
        case Level::scalar: return true;
        case Level::avx2:
#if defined(FUZZPOC_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Level::neon:
#if defined(FUZZPOC_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Level detected_level() {
    if (const char* env = std::getenv("FUZZPOC_SIMD")) {
        const std::string wanted{env};
        for (Level level : {Level::scalar, Level::avx2, Level::neon}) {
            if (wanted == to_string(level) && supported(level)) return level;
        }
    }
    return best_supported();
}

const KernelTable& kernels_for(Level level) {
    if (!supported(level)) {
        throw std::invalid_argument("SIMD level not supported on this host: " + std::string{to_string(level)});
    }
    switch (level) {
        case Level::scalar: return scalar_table;
#if defined(FUZZPOC_HAVE_AVX2)
        case Level::avx2: return avx2_table;
#endif
#if defined(FUZZPOC_HAVE_NEON)
        case Level::neon: return neon_table;
#endif
        default: break;
    }
    return scalar_table;
}

const KernelTable& kernels() {
    const KernelTable* table = active_table.load(std::memory_order_acquire);
    if (table == nullptr) {
        table = &kernels_for(detected_level());
        active_table.store(table, std::memory_order_release);
    }
    return *table;
}

void force_level(Level level) {
    active_table.store(&kernels_for(level), std::memory_order_release);
}

}  // namespace fuzzpoc::simd
