#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "landau/collision.hpp"
#include "landau/kernel.hpp"
#include "landau/spectral.hpp"

namespace testing {

// Scratch directory for one test executable, wiped on first use.
inline std::filesystem::path scratch_dir(const std::string& leaf) {
    const char* env = std::getenv("LANDAU_TEST_TMP");
    std::filesystem::path root = env ? env : std::filesystem::temp_directory_path() / "landau-tests";
    auto dir = root / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<double> random_values(std::size_t count, unsigned seed, double lo = -1.0,
                                         double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(count);
    for (auto& x : v) x = dist(rng);
    return v;
}

// Smooth positive field: a Gaussian with random center, widths and weight of
// a second lobe, compactly concentrated inside the box.
inline landau::DistributionField random_smooth_field(const landau::VelocityGrid& grid,
                                                     unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double R = grid.R();
    landau::Vec3 c1, c2, w1;
    for (int a = 0; a < 3; ++a) {
        c1[a] = (unit(rng) - 0.5) * 0.3 * R;
        c2[a] = (unit(rng) - 0.5) * 0.3 * R;
        w1[a] = (0.12 + 0.08 * unit(rng)) * R;
    }
    const double w2 = (0.12 + 0.08 * unit(rng)) * R;
    const double weight = 0.2 + 0.8 * unit(rng);
    landau::DistributionField f(grid);
    const int half = grid.n() / 2;
    for (int x = -half; x < half; ++x)
        for (int y = -half; y < half; ++y)
            for (int z = -half; z < half; ++z) {
                const auto v = grid.coordinate({x, y, z});
                double e1 = 0.0, e2 = 0.0;
                for (int a = 0; a < 3; ++a) {
                    e1 += std::pow((v[a] - c1[a]) / w1[a], 2);
                    e2 += std::pow((v[a] - c2[a]) / w2, 2);
                }
                f[{x, y, z}] = std::exp(-0.5 * e1) + weight * std::exp(-0.5 * e2);
            }
    return f;
}

inline std::shared_ptr<const landau::KernelTable> kernel_for(const landau::VelocityGrid& grid,
                                                             int fine) {
    return std::make_shared<const landau::KernelTable>(landau::compute_kernel_table(grid, fine));
}

}  // namespace testing
