#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace mls {

/// Uniformly sampled trajectory {Y(t_start + k/N)}. `resolution` is the
/// number of increments per unit time; a span (t_start, t_end) therefore
/// carries floor((t_end-t_start)*N)+1 samples.
struct SamplePath {
    std::vector<double> values;
    long resolution = 0;
    double t_start = 0.0;
    double t_end = 1.0;
    std::map<std::string, std::string> meta;  // seed, generator, parameters

    double t_at(std::size_t k) const {
        return t_start + static_cast<double>(k) / static_cast<double>(resolution);
    }

    std::size_t expected_size() const {
        return static_cast<std::size_t>(
                   std::floor((t_end - t_start) * static_cast<double>(resolution))) +
               1;
    }

    /// Throws std::invalid_argument on violated invariants.
    void validate() const;
};

}  // namespace mls
