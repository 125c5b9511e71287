#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

/// Fourier coefficients of the truncated Coulomb kernel psi(z) = |z| on the
/// extended lattice,
///
///     psi~(k) = (T/pi)^4 * integral over [-pi,pi]^3 of |z| exp(-i k.z) dz,
///
/// for k in [-n, n-1]^3, stored in cube order (offset of k on a 2n cube).
class KernelTable {
public:
    KernelTable(int n, double T, int fine, std::vector<double> values);

    int n() const noexcept { return n_; }
    int extended_n() const noexcept { return 2 * n_; }
    double T() const noexcept { return T_; }
    int fine() const noexcept { return fine_; }

    double at(const Index3& k) const { return values_[cube_offset(k, 2 * n_)]; }
    const std::vector<double>& values() const noexcept { return values_; }

    // max |Im| / max |Re| observed before the imaginary part was discarded;
    // zero for tables read back from disk.
    double imag_ratio() const noexcept { return imag_ratio_; }
    void set_imag_ratio(double r) noexcept { imag_ratio_ = r; }

    bool matches(const VelocityGrid& grid) const noexcept {
        return n_ == grid.n() && T_ == grid.T();
    }

private:
    int n_;
    double T_;
    int fine_;
    std::vector<double> values_;
    double imag_ratio_ = 0.0;
};

// Default quadrature resolution for an inner lattice of n points per axis.
int default_kernel_fine(int n);

/// Rectangle-rule quadrature of the kernel integral with `fine` samples per
/// axis on [-pi,pi)^3, evaluated by fast transforms. Requires fine >= 2n and
/// even. Throws KernelQuadratureError if the imaginary residue exceeds 1e-8
/// of the largest real coefficient.
KernelTable compute_kernel_table(const VelocityGrid& grid, int fine);

void store_kernel(const KernelTable& table, const std::filesystem::path& path);
KernelTable load_kernel(const std::filesystem::path& path);
/// Loads and checks the header against the grid (and fine, when given).
KernelTable load_kernel(const std::filesystem::path& path, const VelocityGrid& grid,
                        std::optional<int> fine = std::nullopt);

/// Loads the cache when it exists and matches, otherwise computes the table
/// and (if a path was given) writes it.
KernelTable load_or_compute_kernel(const VelocityGrid& grid, int fine,
                                   const std::optional<std::filesystem::path>& cache);

}  // namespace landau
