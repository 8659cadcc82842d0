#pragma once

// AVX2 double-precision exp/log, Cephes-style polynomials (~1 ulp in the
// ranges used here). Only included by the AVX2 translation unit, which is
// compiled with -mavx2 -mfma.

#include <immintrin.h>

namespace mls::kern::avx2 {

inline __m256d vset(double v) { return _mm256_set1_pd(v); }

// exp(x) for finite x; underflows to 0 below ~-708, clamps above ~709.
inline __m256d vexp(__m256d x) {
    const __m256d max_x = vset(709.436);
    const __m256d min_x = vset(-708.396);
    const __m256d under = _mm256_cmp_pd(x, min_x, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, min_x), max_x);

    const __m256d log2e = vset(1.4426950408889634074);
    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    // x - n*ln2 in two parts.
    x = _mm256_fnmadd_pd(n, vset(6.93145751953125e-1), x);
    x = _mm256_fnmadd_pd(n, vset(1.42860682030941723212e-6), x);

    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d px = vset(1.26177193074810590878e-4);
    px = _mm256_fmadd_pd(px, xx, vset(3.02994407707441961300e-2));
    px = _mm256_fmadd_pd(px, xx, vset(9.99999999999999999910e-1));
    px = _mm256_mul_pd(px, x);
    __m256d qx = vset(3.00198505138664455042e-6);
    qx = _mm256_fmadd_pd(qx, xx, vset(2.52448340349684104192e-3));
    qx = _mm256_fmadd_pd(qx, xx, vset(2.27265548208155028766e-1));
    qx = _mm256_fmadd_pd(qx, xx, vset(2.00000000000000000005e0));
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(e, vset(2.0), vset(1.0));

    // Scale by 2^n.
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
    n64 = _mm256_slli_epi64(n64, 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(n64));

    return _mm256_andnot_pd(under, e);
}

// log(x) for x > 0 and normal; callers mask out zero lanes themselves.
inline __m256d vlog(__m256d x) {
    const __m256i ix = _mm256_castpd_si256(x);
    const __m256i exp_bits =
        _mm256_and_si256(_mm256_srli_epi64(ix, 52), _mm256_set1_epi64x(0x7ff));
    // Gather the low dword of each 64-bit lane, widen to double.
    const __m256i lo_dwords = _mm256_permutevar8x32_epi32(
        exp_bits, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    __m256d e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(lo_dwords));
    e = _mm256_sub_pd(e, vset(1022.0));

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
        _mm256_and_si256(ix, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3fe0000000000000LL)));  // mantissa in [0.5,1)

    const __m256d sqrth = vset(0.70710678118654752440);
    const __m256d small = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
    e = _mm256_sub_pd(e, _mm256_and_pd(small, vset(1.0)));
    // x' = (m<sqrth ? 2m : m) - 1
    m = _mm256_add_pd(m, _mm256_and_pd(small, m));
    __m256d f = _mm256_sub_pd(m, vset(1.0));

    // log(1+f) = 2 atanh(s) with s = f/(f+2); |s| <= (sqrt2-1)/(sqrt2+1)
    // ~ 0.1716, so the odd series in s converges to < 1e-19 by degree 25.
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(f, vset(2.0)));
    const __m256d w = _mm256_mul_pd(s, s);
    __m256d p = vset(2.0 / 25.0);
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 23.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 21.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 19.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 17.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 15.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 13.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 11.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 9.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 7.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 5.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0 / 3.0));
    p = _mm256_fmadd_pd(p, w, vset(2.0));
    const __m256d y = _mm256_mul_pd(s, p);  // log of the reduced mantissa

    // e*ln2 in split precision: ln2 = 0.693359375 - 2.1219444005469058e-4.
    __m256d r = _mm256_fnmadd_pd(e, vset(2.121944400546905827679e-4), y);
    r = _mm256_fmadd_pd(e, vset(0.693359375), r);
    return r;
}

// log2(x) for x > 0 and normal. Exact on powers of two: the reduced
// mantissa is 1.0 there, the series term vanishes, and the result is the
// (integer) exponent with no rounding.
inline __m256d vlog2(__m256d x) {
    const __m256i ix = _mm256_castpd_si256(x);
    const __m256i exp_bits =
        _mm256_and_si256(_mm256_srli_epi64(ix, 52), _mm256_set1_epi64x(0x7ff));
    const __m256i lo_dwords = _mm256_permutevar8x32_epi32(
        exp_bits, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    __m256d e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(lo_dwords));
    e = _mm256_sub_pd(e, vset(1022.0));

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
        _mm256_and_si256(ix, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3fe0000000000000LL)));  // mantissa in [0.5,1)

    const __m256d sqrth = vset(0.70710678118654752440);
    const __m256d small = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
    e = _mm256_sub_pd(e, _mm256_and_pd(small, vset(1.0)));
    m = _mm256_add_pd(m, _mm256_and_pd(small, m));
    __m256d f = _mm256_sub_pd(m, vset(1.0));

    // log2(1+f) = 2 atanh(s)/ln2 with s = f/(f+2).
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(f, vset(2.0)));
    const __m256d w = _mm256_mul_pd(s, s);
    constexpr double kTwoInvLn2 = 2.0 * 1.4426950408889634074;
    __m256d p = vset(kTwoInvLn2 / 25.0);
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 23.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 21.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 19.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 17.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 15.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 13.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 11.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 9.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 7.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 5.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2 / 3.0));
    p = _mm256_fmadd_pd(p, w, vset(kTwoInvLn2));
    return _mm256_add_pd(e, _mm256_mul_pd(s, p));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace mls::kern::avx2
