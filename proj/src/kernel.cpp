#include "landau/kernel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <string>

#include "landau/binary_io.hpp"
#include "landau/errors.hpp"
#include "landau/spectral.hpp"

namespace landau {

namespace {

constexpr char kMagic[] = "LSKT";
constexpr std::uint32_t kVersion = 1;
constexpr double kRealnessTolerance = 1e-8;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

KernelTable::KernelTable(int n, double T, int fine, std::vector<double> values)
    : n_(n), T_(T), fine_(fine), values_(std::move(values)) {
    if (values_.size() != cube_volume(2 * n)) {
        throw GridMismatchError("kernel table size does not match (2n)^3 for n=" +
                                std::to_string(n));
    }
}

int default_kernel_fine(int n) { return std::max(256, 8 * n); }

KernelTable compute_kernel_table(const VelocityGrid& grid, int fine) {
    const int n = grid.n();
    const int m = 2 * n;
    if (fine < m || fine % 2 != 0) {
        throw ConfigError("kernel fine resolution must be even and >= 2n = " + std::to_string(m) +
                          ", got " + std::to_string(fine));
    }
    const auto F = static_cast<std::size_t>(fine);
    const auto M = static_cast<std::size_t>(m);
    const double dz = 2.0 * std::numbers::pi / fine;

    // z coordinate at transform-order position p.
    std::vector<double> z(F);
    for (std::size_t p = 0; p < F; ++p) z[p] = SpectralCoeffs::wave_number(p, fine) * dz;
    // Transform-order position of the retained wave numbers k = -n..n-1.
    std::vector<std::size_t> keep(M);
    for (int r = 0; r < m; ++r) keep[r] = static_cast<std::size_t>(((r - n) % fine + fine) % fine);

    // Stage 1: 2D transforms of each z-plane, keeping the low (kx, ky) modes.
    // partial[(rx*M + ry)*F + pz], with rx, ry the storage positions of kx, ky.
    ComplexArray partial(M * M * F);
    fftw_plan plane_plan = nullptr;
    fftw_plan line_plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        ComplexArray a(F * F), b(F * F);
        plane_plan = fftw_plan_dft_2d(fine, fine, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
        ComplexArray c(F), d(F);
        line_plan = fftw_plan_dft_1d(fine, reinterpret_cast<fftw_complex*>(c.data()),
                                     reinterpret_cast<fftw_complex*>(d.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE);
    }

    // |z| is even in z_z, so planes at +m and -m coincide bit for bit; only
    // positions 0..F/2 are transformed and mirrored.
    const long half = static_cast<long>(F / 2);
#pragma omp parallel
    {
        ComplexArray in(F * F), out(F * F);
#pragma omp for schedule(dynamic)
        for (long pz = 0; pz <= half; ++pz) {
            const double zz2 = z[pz] * z[pz];
            for (std::size_t px = 0; px < F; ++px) {
                const double zx2 = z[px] * z[px];
                Complex* row = in.data() + px * F;
                for (std::size_t py = 0; py < F; ++py) {
                    row[py] = Complex{std::sqrt(zx2 + z[py] * z[py] + zz2), 0.0};
                }
            }
            fftw_execute_dft(plane_plan, reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()));
            const std::size_t mirror = (F - static_cast<std::size_t>(pz)) % F;
            for (std::size_t rx = 0; rx < M; ++rx) {
                for (std::size_t ry = 0; ry < M; ++ry) {
                    const Complex v = out[keep[rx] * F + keep[ry]];
                    const std::size_t base = (rx * M + ry) * F;
                    partial[base + pz] = v;
                    partial[base + mirror] = v;
                }
            }
        }
    }

    // Stage 2: 1D transforms along z for each retained (kx, ky).
    const double q = grid.T() / std::numbers::pi;
    const double q2 = q * q;
    const double q4 = q2 * q2;
    const double cell = dz * dz * dz;
    std::vector<double> re(M * M * M);
    double max_re = 0.0;
    double max_im = 0.0;
#pragma omp parallel
    {
        ComplexArray in(F), out(F);
        double local_re = 0.0, local_im = 0.0;
#pragma omp for schedule(static)
        for (long rxy = 0; rxy < static_cast<long>(M * M); ++rxy) {
            std::copy_n(partial.data() + static_cast<std::size_t>(rxy) * F, F, in.data());
            fftw_execute_dft(line_plan, reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()));
            for (std::size_t rz = 0; rz < M; ++rz) {
                const Complex v = out[keep[rz]];
                const double value = v.real() * q4 * cell;
                re[static_cast<std::size_t>(rxy) * M + rz] = value;
                local_re = std::max(local_re, std::abs(value));
                local_im = std::max(local_im, std::abs(v.imag() * q4 * cell));
            }
        }
#pragma omp critical
        {
            max_re = std::max(max_re, local_re);
            max_im = std::max(max_im, local_im);
        }
    }
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plane_plan);
        fftw_destroy_plan(line_plan);
    }

    const double ratio = max_re > 0.0 ? max_im / max_re : 0.0;
    if (!(ratio <= kRealnessTolerance)) {
        throw KernelQuadratureError("kernel quadrature imaginary residue ratio " +
                                    std::to_string(ratio) + " exceeds 1e-8");
    }

    // Each mode takes the value of its representative with non-negative
    // components, which makes the reflection symmetry of |z| exact. Modes with
    // a component equal to -n have no mirror partner and keep their own value.
    std::vector<double> values(M * M * M);
    for (std::size_t off = 0; off < values.size(); ++off) {
        Index3 k = cube_index(off, m);
        for (auto& c : k) {
            if (c < 0 && c > -n) c = -c;
        }
        values[off] = re[cube_offset(k, m)];
    }

    KernelTable table(n, grid.T(), fine, std::move(values));
    table.set_imag_ratio(ratio);
    return table;
}

void store_kernel(const KernelTable& table, const std::filesystem::path& path) {
    binio::Writer w;
    w.magic(std::string_view(kMagic, 4));
    w.u32(kVersion);
    w.u32(static_cast<std::uint32_t>(table.n()));
    w.u32(static_cast<std::uint32_t>(table.fine()));
    w.f64(table.T());
    w.mark_payload();
    w.f64_block(table.values());
    w.crc_of_payload();
    w.write_file(path);
}

KernelTable load_kernel(const std::filesystem::path& path) {
    auto r = binio::Reader::from_file(path);
    r.expect_magic(std::string_view(kMagic, 4));
    const auto version = r.u32();
    if (version != kVersion) {
        throw FileFormatError("unsupported kernel cache version " + std::to_string(version));
    }
    const auto n = r.u32();
    const auto fine = r.u32();
    const double T = r.f64();
    if (n < 4 || n % 2 != 0 || n > 4096) throw FileFormatError("kernel cache has invalid n");
    r.mark_payload();
    auto values = r.f64_block(cube_volume(2 * static_cast<int>(n)));
    r.verify_crc_of_payload();
    r.expect_end();
    return KernelTable(static_cast<int>(n), T, static_cast<int>(fine), std::move(values));
}

KernelTable load_kernel(const std::filesystem::path& path, const VelocityGrid& grid,
                        std::optional<int> fine) {
    auto table = load_kernel(path);
    if (!table.matches(grid)) {
        throw HeaderMismatchError("kernel cache " + path.string() + " is for n=" +
                                  std::to_string(table.n()) + ", T=" + std::to_string(table.T()) +
                                  "; requested n=" + std::to_string(grid.n()) +
                                  ", T=" + std::to_string(grid.T()));
    }
    if (fine && table.fine() != *fine) {
        throw HeaderMismatchError("kernel cache " + path.string() + " was computed with fine=" +
                                  std::to_string(table.fine()) + ", requested " +
                                  std::to_string(*fine));
    }
    return table;
}

KernelTable load_or_compute_kernel(const VelocityGrid& grid, int fine,
                                   const std::optional<std::filesystem::path>& cache) {
    if (cache && std::filesystem::exists(*cache)) {
        try {
            return load_kernel(*cache, grid, fine);
        } catch (const HeaderMismatchError&) {
            // stale cache for another grid: recompute and overwrite below
        }
    }
    auto table = compute_kernel_table(grid, fine);
    if (cache) store_kernel(table, *cache);
    return table;
}

}  // namespace landau
