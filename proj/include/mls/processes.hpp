#pragma once

#include <cstddef>
#include <vector>

#include "mls/fkl.hpp"
#include "mls/index_function.hpp"
#include "mls/path.hpp"
#include "mls/rng.hpp"

namespace mls {

/// Symmetric multistable Levy motion on (0,1) by direct increment
/// simulation: increment k is a unit-scale S_{alpha(k/N)} draw scaled by
/// N^{-1/alpha(k/N)}, cumulated with Y(0)=0. O(N); this is the production
/// route, the series route below exists for cross-validation.
SamplePath levy_multistable_increments(const IndexFunction& alpha_fn, long N,
                                       Rng& rng);

/// Same process through the shot-noise series with the indicator kernel
/// 1_{[0,t]} and sites uniform on (0,1) (r == 1). O(N * n_terms) in
/// general; constant alpha takes an O(n_terms log n_terms) fast path.
SamplePath levy_multistable_fkl(const IndexFunction& alpha_fn, long N,
                                std::size_t n_terms, Rng& rng);

/// Linear multistable multifractional motion on (0,1): well-balanced LFSM
/// kernel |t-x|^{H(u)-1/a(u)} - |x|^{H(u)-1/a(u)}, sites drawn shell-wise
/// with P(shell j) proportional to 1/j^2 and weight r = pi^2 j^2 / 3
/// (renormalized over the capped shell range). Requires H - 1/alpha >= 0
/// on the span; H == 1/alpha degenerates to the zero path (warned).
SamplePath lmmm(const IndexFunction& alpha_fn, const IndexFunction& h_fn, long N,
                std::size_t n_terms, Rng& rng);

/// Shell measure used by lmmm, exposed for distribution checks.
FklMeasure lmmm_shell_measure();

/// Shell cap and renormalization constant of the lmmm measure.
constexpr int kLmmmShellMax = 4096;
double lmmm_shell_norm();  // sum_{j<=jmax} 6/(pi^2 j^2)

/// Preprocessing for raw (e.g. physiological) series: Y(0)=0 prepended,
/// then partial sums of the mean-removed input. The final value is 0 by
/// construction.
SamplePath cumulative_demean(const std::vector<double>& raw);

}  // namespace mls
