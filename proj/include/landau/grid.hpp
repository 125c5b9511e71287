#pragma once

#include <array>
#include <cstddef>

namespace landau {

using Index3 = std::array<int, 3>;
using Vec3 = std::array<double, 3>;

// Linear storage position of multi-index j on a cube of `size` nodes per axis.
// Row-major over (x, y, z), each axis shifted so that j = -size/2 maps to 0.
inline std::size_t cube_offset(const Index3& j, int size) {
    const int half = size / 2;
    return (static_cast<std::size_t>(j[0] + half) * size + (j[1] + half)) * size + (j[2] + half);
}

inline Index3 cube_index(std::size_t offset, int size) {
    const int half = size / 2;
    const auto s = static_cast<std::size_t>(size);
    return {static_cast<int>(offset / (s * s)) - half, static_cast<int>((offset / s) % s) - half,
            static_cast<int>(offset % s) - half};
}

inline std::size_t cube_volume(int size) {
    const auto s = static_cast<std::size_t>(size);
    return s * s * s;
}

inline bool in_cube(const Index3& j, int size) {
    const int half = size / 2;
    for (int a = 0; a < 3; ++a) {
        if (j[a] < -half || j[a] >= half) return false;
    }
    return true;
}

/// Collocation lattice on [-R,R]^3 (n nodes per axis) together with its
/// extension to [-T,T]^3 (2n nodes per axis) used for the convolution.
///
/// T is always 2R, so both lattices share the spacing h = 2R/n and every
/// inner node is also a node of the extended lattice.
class VelocityGrid {
public:
    /// Throws ConfigError unless n is even, n >= 4 and R > 0.
    VelocityGrid(int n, double R);

    int n() const noexcept { return n_; }
    int extended_n() const noexcept { return 2 * n_; }
    double R() const noexcept { return R_; }
    double T() const noexcept { return T_; }
    double h() const noexcept { return h_; }
    double cell_volume() const noexcept { return h_ * h_ * h_; }

    std::size_t inner_count() const noexcept { return cube_volume(n_); }
    std::size_t extended_count() const noexcept { return cube_volume(2 * n_); }

    bool contains_inner(const Index3& j) const noexcept { return in_cube(j, n_); }
    bool contains_extended(const Index3& j) const noexcept { return in_cube(j, 2 * n_); }

    // Coordinates are j*h on both lattices.
    Vec3 coordinate(const Index3& j) const noexcept {
        return {j[0] * h_, j[1] * h_, j[2] * h_};
    }
    double axis_coordinate(int j) const noexcept { return j * h_; }

    std::size_t inner_offset(const Index3& j) const noexcept { return cube_offset(j, n_); }
    std::size_t extended_offset(const Index3& j) const noexcept { return cube_offset(j, 2 * n_); }

    /// Index of the same physical point on the extended lattice.
    /// Throws std::out_of_range when j is not an inner index.
    Index3 embed_index(const Index3& j) const;

    friend bool operator==(const VelocityGrid&, const VelocityGrid&) = default;

private:
    int n_;
    double R_;
    double T_;
    double h_;
};

inline VelocityGrid make_grid(int n, double R) { return VelocityGrid(n, R); }

}  // namespace landau
