// AVX2 variants of the inner-loop kernels. This translation unit is built
// with -mavx2 -mfma and only ever called after a runtime cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "mls/simd/kernels.hpp"
#include "vecmath_avx2.hpp"

namespace mls::kern {

namespace {

using namespace avx2;

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kZero = _mm256_setzero_pd();

double v_sum_log_abs(const double* x, std::size_t n, std::size_t* skipped) {
    __m256d acc = kZero;
    std::size_t zeros = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask);
        const __m256d zmask = _mm256_cmp_pd(a, kZero, _CMP_EQ_OQ);
        zeros += static_cast<std::size_t>(
            __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(zmask))));
        a = _mm256_blendv_pd(a, kOne, zmask);  // log2(1)=0 for skipped lanes
        acc = _mm256_add_pd(acc, vlog2(a));
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        const double a = std::abs(x[i]);
        if (a == 0.0) {
            ++zeros;
            continue;
        }
        sum += std::log2(a);
    }
    if (skipped) *skipped = zeros;
    return sum;
}

double v_sum_abs_pow(const double* x, std::size_t n, double p) {
    const __m256d vp = vset(p);
    __m256d acc = kZero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask);
        const __m256d zmask = _mm256_cmp_pd(a, kZero, _CMP_EQ_OQ);
        a = _mm256_blendv_pd(a, kOne, zmask);
        __m256d t = vexp(_mm256_mul_pd(vp, vlog(a)));
        t = _mm256_andnot_pd(zmask, t);
        acc = _mm256_add_pd(acc, t);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        const double a = std::abs(x[i]);
        if (a == 0.0) continue;
        sum += std::exp(p * std::log(a));
    }
    return sum;
}

double v_sum_signed_exp(const double* q, const double* sf, std::size_t n,
                        double c) {
    const __m256d vc = vset(c);
    __m256d acc = kZero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d e = vexp(_mm256_mul_pd(vc, _mm256_loadu_pd(q + i)));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(sf + i), e, acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) sum += sf[i] * std::exp(c * q[i]);
    return sum;
}

double v_lfsm_sum(const double* q, const double* sgn, const double* v,
                  const double* logv, std::size_t n, double c, double h,
                  double t) {
    const __m256d vc = vset(c);
    const __m256d vh = vset(h);
    const __m256d vt = vset(t);
    __m256d acc = kZero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d =
            _mm256_and_pd(_mm256_sub_pd(vt, _mm256_loadu_pd(v + i)), kAbsMask);
        const __m256d zmask = _mm256_cmp_pd(d, kZero, _CMP_EQ_OQ);
        d = _mm256_blendv_pd(d, kOne, zmask);
        __m256d a = vexp(_mm256_mul_pd(vh, vlog(d)));
        a = _mm256_andnot_pd(zmask, a);
        const __m256d b = vexp(_mm256_mul_pd(vh, _mm256_loadu_pd(logv + i)));
        const __m256d w = vexp(_mm256_mul_pd(vc, _mm256_loadu_pd(q + i)));
        acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(sgn + i), w),
                              _mm256_sub_pd(a, b), acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        const double d = std::abs(t - v[i]);
        const double a = (d == 0.0) ? 0.0 : std::exp(h * std::log(d));
        const double b = std::exp(h * logv[i]);
        sum += sgn[i] * std::exp(c * q[i]) * (a - b);
    }
    return sum;
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b{"avx2", v_sum_log_abs, v_sum_abs_pow,
                           v_sum_signed_exp, v_lfsm_sum};
    return b;
}

}  // namespace mls::kern

#endif  // x86-64
