#pragma once

#include <string>
#include <vector>

#include "mls/estimators.hpp"
#include "mls/path.hpp"

namespace mls::io {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Write via a temporary file in the same directory, then rename.
void write_text_atomic(const std::string& file, const std::string& content);

/// Path CSV, header `t,value`.
void write_path_csv(const SamplePath& path, const std::string& file);

/// Parses `t,value` with uniform spacing (relative tolerance 1e-9).
SamplePath read_path_csv(const std::string& file);

/// Raw series: single column, or the value column of `t,value`.
/// A non-numeric first line is treated as a header and skipped.
std::vector<double> read_raw_csv(const std::string& file);

/// Estimate CSV, header `t0,h_hat,alpha_hat,status`. NaN entries are
/// written as `nan`; commas in status messages are replaced by `;`.
void write_series_csv(const EstimateSeries& series, const std::string& file);

}  // namespace mls::io
