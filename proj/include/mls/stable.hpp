#pragma once

#include <cstddef>
#include <vector>

#include "mls/rng.hpp"

namespace mls {

/// Stability index of a standard symmetric alpha-stable law S_alpha(1,0,0).
/// The open interval (0,2) is enforced; the Gaussian boundary alpha=2 and
/// the degenerate alpha=0 are rejected.
struct StableParams {
    explicit StableParams(double a);
    double alpha;
};

/// Exponent pair for moment ratios: base exponent p0 and query exponent p,
/// with 0 < p0 <= p.
struct MomentRatioSpec {
    MomentRatioSpec(double p0_, double p_);
    double p0;
    double p;
};

/// Extended real for fractional absolute moments: E|Z|^p is finite only
/// for p < alpha. Callers branch on finiteness explicitly instead of
/// testing a floating overflow.
class ExtReal {
public:
    static ExtReal finite(double v) { return ExtReal(v, true); }
    static ExtReal infinite() { return ExtReal(0.0, false); }
    bool is_finite() const { return finite_; }
    double value() const;  // throws on the infinite sentinel

private:
    ExtReal(double v, bool f) : value_(v), finite_(f) {}
    double value_;
    bool finite_;
};

/// One S_alpha(1,0,0) draw via the Chambers-Mallows-Stuck transform.
/// Consumes exactly two uniforms from the stream. alpha=1 takes the
/// dedicated Cauchy branch; the general formula is singular there.
double sample_sas_one(const StableParams& params, Rng& rng);

/// `count` i.i.d. S_alpha(1,0,0) draws. Identical (seed, params, count)
/// gives bit-identical output.
std::vector<double> sample_sas(const StableParams& params, std::size_t count,
                               Rng& rng);

/// Normalization constant C_eta = ( int_0^inf x^{-eta} sin(x) dx )^{-1}
/// for eta in (0,2), evaluated by quadrature (head on [0,1], oscillatory
/// tail summed over half-periods with series acceleration).
double c_eta(double eta);

/// Fractional absolute moment E|Z|^p of Z ~ S_alpha(1,0,0):
///   E|Z|^p = 2^{p-1} Gamma(1 - p/alpha) / ( p * int_0^inf u^{-p-1} sin^2(u) du )
/// Finite for 0 < p < alpha, the infinite sentinel otherwise.
/// Results are memoized per (alpha, p); the cache is safe for concurrent use.
ExtReal abs_moment(const StableParams& params, double p);

/// The denominator integral int_0^inf u^{-p-1} sin^2(u) du, 0 < p < 2.
/// Exposed for cross-checks; memoized per p.
double sin_sq_integral(double p);

/// Theoretical moment ratio
///   R_alpha(p) = (E|Z|^{p0})^{1/p0} / (E|Z|^p)^{1/p} * 1_{p < alpha}.
/// Accepts the full minimization domain alpha in [0,2]; the indicator (and
/// the divergent numerator when alpha <= p0) makes the value 0 there.
double theoretical_ratio(double alpha, const MomentRatioSpec& spec);

}  // namespace mls
