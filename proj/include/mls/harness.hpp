#pragma once

#include <string>
#include <vector>

#include "mls/estimators.hpp"
#include "mls/experiment.hpp"
#include "mls/path.hpp"

namespace mls::harness {

/// Component ids for substream derivation (seed, replication, component).
enum Component : std::uint64_t { kGenerator = 0 };

/// One replication of the configured generator, with provenance metadata
/// attached. Deterministic in (spec, replication).
SamplePath simulate_one(const ExperimentSpec& spec, long replication);

/// Writes one path CSV plus JSON sidecar per replication into
/// spec.out_dir; returns the CSV paths. Replications run concurrently up
/// to `jobs`; outputs are independent of the job count.
std::vector<std::string> cmd_simulate(const ExperimentSpec& spec, int jobs);

/// t0 grid for a path under the spec's estimator settings ("auto" span
/// keeps every window interior for the larger of the two windows).
std::vector<double> build_t0_grid(const ExperimentSpec& spec,
                                  const SamplePath& path);

/// Runs the H sweep (n_window_h) and the alpha sweep (n_window_alpha) and
/// merges them onto one grid.
EstimateSeries estimate_path(const SamplePath& path, const ExperimentSpec& spec,
                             Which which, int jobs);

/// Estimates each input CSV; writes `<stem>.estimates.csv` + sidecar.
/// Returns 0 when at least one grid point succeeded, 4 otherwise.
int cmd_estimate(const std::vector<std::string>& inputs,
                 const ExperimentSpec& spec, Which which, int jobs);

/// Known figure presets: fig1-row1..3, fig2, fig3, fig4-row1..4.
std::vector<std::string> preset_names();
ExperimentSpec make_preset(const std::string& figure, bool full,
                           std::uint64_t seed, const std::string& out_dir);

/// End-to-end preset run: simulate, estimate, write report.json with
/// summary metrics against the preset's true index functions.
int cmd_reproduce(const std::string& figure, const std::string& out_dir,
                  std::uint64_t seed, bool full, int jobs);

/// Cumulative-demean preprocessing followed by both sweeps. n_window 0
/// picks the default floor(len/40) rounded to even.
int cmd_analyze(const std::string& input, const std::string& out_dir,
                long n_window, int jobs);

}  // namespace mls::harness
