#include "landau/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "landau/errors.hpp"

namespace landau {

VelocityGrid::VelocityGrid(int n, double R) : n_(n), R_(R), T_(2.0 * R), h_(0.0) {
    if (n < 4 || n % 2 != 0) {
        throw ConfigError("grid size n must be even and >= 4, got " + std::to_string(n));
    }
    if (!(R > 0.0) || !std::isfinite(R)) {
        throw ConfigError("domain half-width R must be positive and finite");
    }
    h_ = 2.0 * R / n;
}

Index3 VelocityGrid::embed_index(const Index3& j) const {
    if (!contains_inner(j)) {
        throw std::out_of_range("multi-index (" + std::to_string(j[0]) + "," +
                                std::to_string(j[1]) + "," + std::to_string(j[2]) +
                                ") is outside the inner lattice");
    }
    return j;
}

}  // namespace landau
