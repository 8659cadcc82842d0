#include "mls/path.hpp"

#include <stdexcept>

namespace mls {

void SamplePath::validate() const {
    if (resolution < 2)
        throw std::invalid_argument("SamplePath: resolution must be >= 2");
    if (!(t_end >= t_start))
        throw std::invalid_argument("SamplePath: t_end < t_start");
    if (values.size() != expected_size())
        throw std::invalid_argument("SamplePath: value count does not match span");
}

}  // namespace mls
