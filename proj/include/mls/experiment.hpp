#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "mls/estimators.hpp"
#include "mls/index_function.hpp"

namespace mls {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declarative description of an index function, as read from a config
/// file. When no range is given it is inferred from dense sampling over
/// the span (process constructors still enforce their own bounds).
struct IndexFunctionSpec {
    bool present = false;
    std::string form;  // affine | constant | logistic | sinusoidal
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    std::optional<std::pair<double, double>> range;

    IndexFunction build(std::pair<double, double> span = {0.0, 1.0}) const;
    std::string describe() const;
};

/// One simulation/estimation experiment: generator, index functions,
/// resolution, estimator settings, replication count, and seed. The seed
/// is mandatory; there is no wall-clock default.
struct ExperimentSpec {
    std::string generator;  // levy-increments | levy-fkl | lmmm | external-csv
    IndexFunctionSpec alpha_spec;
    IndexFunctionSpec h_spec;
    long N = 1000;
    std::size_t n_terms = 65536;
    long replications = 1;
    bool seed_set = false;
    std::uint64_t seed = 0;
    std::string out_dir = ".";

    long n_window_alpha = 2042;
    long n_window_h = 500;
    double p0 = 0.2;
    double gamma = 0.5;
    int p_count = 61;
    double alpha_step = 0.005;
    std::string boundary = "error";  // error | shrink-window
    int t0_count = 161;
    std::string t0_span = "auto";    // auto | "lo,hi"

    void validate() const;  // throws ConfigError
    EstimatorConfig estimator_config(long n_window) const;

    /// Flat sectioned key=value text (the on-disk config format).
    static ExperimentSpec parse_string(const std::string& text);
    static ExperimentSpec parse_file(const std::string& file);

    /// Canonical text form, used for provenance hashing and sidecars.
    std::string canonical() const;
    std::uint64_t config_hash() const;
};

}  // namespace mls
