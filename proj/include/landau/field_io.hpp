#pragma once

#include <filesystem>

#include "landau/spectral.hpp"

namespace landau {

// Binary field dump, little-endian:
//   "LSPF" | version u32 | n u32 | R f64 | t f64 | n^3 f64 values | CRC32(values)
// Values follow the cube storage order of the grid module.
struct FieldDump {
    DistributionField field;
    double t;
};

void write_field_dump(const DistributionField& f, double t, const std::filesystem::path& path);
FieldDump read_field_dump(const std::filesystem::path& path);

/// Values of a finer reference solution at the nodes of `grid`. Requires the
/// same R and a reference size that is a multiple of grid.n(); the nodes are
/// then shared and restriction is exact.
DistributionField restrict_reference(const DistributionField& reference, const VelocityGrid& grid);

}  // namespace landau
