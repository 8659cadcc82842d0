#pragma once

#include <cstddef>

namespace mls::kern {

/// Arithmetic inner loops of the library, dispatched at runtime. Each entry
/// has a scalar reference implementation and (on x86-64 with AVX2) a
/// vectorized variant; the two are equivalence-tested against each other.
struct Backend {
    const char* name;

    /// Sum of log2|x_i| over nonzero entries; *skipped counts the zeros.
    /// Base 2 keeps the windowed log estimator exact on dyadic increments
    /// (log2 of a power of two is an integer, and integer sums are exact).
    double (*sum_log_abs)(const double* x, std::size_t n, std::size_t* skipped);

    /// Sum of |x_i|^p with the convention |0|^p = 0 (p > 0).
    double (*sum_abs_pow)(const double* x, std::size_t n, double p);

    /// Sum of sf_i * exp(c * q_i). Series terms of the shot-noise
    /// representation: q_i = log r(V_i) - log Gamma_i, c = 1/alpha(u),
    /// sf_i carries the sign (and any 0/1 kernel factor).
    double (*sum_signed_exp)(const double* q, const double* sf, std::size_t n,
                             double c);

    /// Sum of sgn_i * exp(c*q_i) * (|t - v_i|^h - |v_i|^h) with h >= 0 and
    /// logv_i = log|v_i| precomputed. |0|^h is taken as 0 for h > 0.
    double (*lfsm_sum)(const double* q, const double* sgn, const double* v,
                       const double* logv, std::size_t n, double c, double h,
                       double t);
};

const Backend& scalar_backend();

/// Best backend for this machine (AVX2 when available, otherwise scalar).
const Backend& active();

/// Override dispatch, e.g. to force the scalar path in equivalence tests.
/// Pass nullptr to restore automatic selection.
void force_backend(const Backend* b);

}  // namespace mls::kern
