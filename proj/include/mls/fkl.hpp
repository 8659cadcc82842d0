#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mls/index_function.hpp"
#include "mls/path.hpp"
#include "mls/rng.hpp"

namespace mls {

/// One realization of the shot-noise atom triples: Poisson arrival times
/// Gamma_i, Rademacher signs gamma_i, spatial sites V_i, and the weights
/// r(V_i) of the sampling measure.
struct FklAtoms {
    std::vector<double> gammas;   // strictly increasing, positive
    std::vector<double> signs;    // +-1
    std::vector<double> sites;
    std::vector<double> weights;  // r(V_i) > 0

    std::size_t count() const { return gammas.size(); }
    void validate() const;
};

/// The pair (site sampler for the probability measure m_hat, weight r)
/// with m_hat(dx) = (1/r(x)) m(dx) by construction of each instance.
struct FklMeasure {
    std::function<double(Rng&)> sampler;
    std::function<double(double)> weight;
};

/// Kernel f(t,u,x) of the random field together with the stability
/// function alpha(u) governing the u-direction.
struct FieldKernel {
    std::function<double(double t, double u, double x)> eval;
    IndexFunction alpha_fn;
};

/// Draws n_terms atoms: cumulative unit-exponential gaps, fair signs,
/// sites from the measure, weights evaluated at the sites. The three
/// sequences are mutually independent.
FklAtoms generate_atoms(const FklMeasure& measure, std::size_t n_terms, Rng& rng);

/// Truncated series evaluation of the field
///   X(t,u) = C_{a(u)}^{1/a(u)} sum_i gamma_i Gamma_i^{-1/a(u)} r(V_i)^{1/a(u)} f(t,u,V_i)
/// over the retained atoms, with compensated summation. Generic and
/// O(count) per call; process-specific fast paths live elsewhere.
double eval_field(const FieldKernel& kernel, const FklAtoms& atoms, double t,
                  double u);

/// Diagonal Y(t_k) = X(t_k, t_k) over a sorted grid, sharing one atom
/// realization across all grid points.
SamplePath eval_diagonal(const FieldKernel& kernel, const FklAtoms& atoms,
                         const std::vector<double>& t_grid);

/// C_eta^{} lookup memoized on a 1e-4-resolution alpha grid; alpha(u)
/// varies along the diagonal and exact per-point quadrature would dominate
/// runtime. Thread-safe.
double c_eta_cached(double alpha);

}  // namespace mls
