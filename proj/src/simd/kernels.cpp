#include "mls/simd/kernels.hpp"

#include <atomic>

namespace mls::kern {

#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();  // defined in kernels_avx2.cpp
#endif

namespace {

const Backend* detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &avx2_backend();
#endif
    return &scalar_backend();
}

std::atomic<const Backend*> forced{nullptr};

}  // namespace

const Backend& active() {
    const Backend* f = forced.load(std::memory_order_relaxed);
    if (f) return *f;
    static const Backend* best = detect();
    return *best;
}

void force_backend(const Backend* b) {
    forced.store(b, std::memory_order_relaxed);
}

}  // namespace mls::kern
