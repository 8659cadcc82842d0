#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mls/path.hpp"

namespace mls {

enum class BoundaryPolicy { Error, ShrinkWindow };
enum class Which { H, Alpha, Both };

/// Pointwise estimation parameters: window length n(N), base exponent p0,
/// distance exponent gamma, and the integration / minimization grids.
struct EstimatorConfig {
    long n_window = 500;              // even, positive
    double p0 = 0.2;
    double gamma = 0.5;
    std::vector<double> p_grid;       // strictly increasing, p0 .. 2
    std::vector<double> alpha_grid;   // strictly increasing, 0 .. 2
    BoundaryPolicy boundary = BoundaryPolicy::Error;
    bool refine = false;              // golden-section pass inside the argmin cell

    /// p0=0.2, gamma=0.5, 61 p-nodes on [p0,2], alpha step 0.005 on [0,2].
    static EstimatorConfig defaults(long n_window);

    void validate() const;
    std::uint64_t grid_hash() const;  // cache key for the ratio table
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Window {
    std::vector<double> increments;
    long first_k = 0;
    long requested = 0;  // n_window; increments.size() < requested under shrink
};

/// The n(N) increments Y_{k,N} = Y((k+1)/N) - Y(k/N) for k in
/// [floor(N t0) - n/2, floor(N t0) + n/2 - 1]. Under ShrinkWindow the
/// range is clipped to valid indices; under Error it must fit.
Window window_increments(const SamplePath& path, double t0, long n_window,
                         BoundaryPolicy policy);

struct HEstimate {
    double value = 0.0;
    std::size_t skipped = 0;  // zero increments dropped from the mean
};

/// Windowed log-increment estimator of the localisability index:
/// the mean of -log|Y_{k,N}| / log N over the window. Zero increments are
/// skipped and the mean renormalized; a window of only zeros is an error.
HEstimate estimate_h(const SamplePath& path, double t0,
                     const EstimatorConfig& config);

/// Empirical moment S_N(p) = ( mean |Y_{k,N}|^p )^{1/p}.
double empirical_moment(const std::vector<double>& increments, double p);

/// R_exp(p) = S_N(p0) / S_N(p) on the config's p-grid.
std::vector<double> ratio_curve(const std::vector<double>& increments,
                                const EstimatorConfig& config);

/// Moment-ratio argmin estimator of the stability index: minimizes the
/// gamma-power L^gamma distance between R_exp and the theoretical ratio
/// over the alpha grid, smallest minimizer on ties.
double estimate_alpha(const SamplePath& path, double t0,
                      const EstimatorConfig& config);

/// Same minimization applied to an externally supplied ratio curve
/// (one value per p-grid node).
double estimate_alpha_from_curve(const std::vector<double>& rexp,
                                 const EstimatorConfig& config);

/// Objective g(alpha) at one alpha-grid node, exposed for sanity checks.
double alpha_objective(const std::vector<double>& rexp,
                       const EstimatorConfig& config, std::size_t alpha_index);

/// Pointwise sweep results over a t0 grid. Failed points carry NaN and a
/// non-"ok" status instead of aborting the sweep.
struct EstimateSeries {
    std::vector<double> t0_values;
    std::vector<double> h_hat;      // NaN where absent or failed
    std::vector<double> alpha_hat;  // NaN where absent or failed
    std::vector<std::string> status;
    EstimatorConfig config;
    std::map<std::string, std::string> meta;
};

EstimateSeries sweep(const SamplePath& path, const std::vector<double>& t0_grid,
                     const EstimatorConfig& config, Which which, int jobs = 1);

}  // namespace mls
