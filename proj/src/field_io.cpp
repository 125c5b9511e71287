#include "landau/field_io.hpp"

#include <string>

#include "landau/binary_io.hpp"
#include "landau/errors.hpp"

namespace landau {

namespace {

constexpr char kMagic[] = "LSPF";
constexpr std::uint32_t kVersion = 1;

}  // namespace

void write_field_dump(const DistributionField& f, double t, const std::filesystem::path& path) {
    binio::Writer w;
    w.magic(std::string_view(kMagic, 4));
    w.u32(kVersion);
    w.u32(static_cast<std::uint32_t>(f.grid.n()));
    w.f64(f.grid.R());
    w.f64(t);
    w.mark_payload();
    w.f64_block(f.values);
    w.crc_of_payload();
    w.write_file(path);
}

FieldDump read_field_dump(const std::filesystem::path& path) {
    auto r = binio::Reader::from_file(path);
    r.expect_magic(std::string_view(kMagic, 4));
    const auto version = r.u32();
    if (version != kVersion) {
        throw FileFormatError("unsupported field dump version " + std::to_string(version));
    }
    const auto n = r.u32();
    const double R = r.f64();
    const double t = r.f64();
    if (n < 4 || n % 2 != 0 || n > 4096) throw FileFormatError("field dump has invalid n");
    VelocityGrid grid = [&] {
        try {
            return VelocityGrid(static_cast<int>(n), R);
        } catch (const ConfigError& e) {
            throw FileFormatError(std::string("field dump header: ") + e.what());
        }
    }();
    r.mark_payload();
    auto values = r.f64_block(grid.inner_count());
    r.verify_crc_of_payload();
    r.expect_end();
    return FieldDump{DistributionField(grid, std::move(values)), t};
}

DistributionField restrict_reference(const DistributionField& reference, const VelocityGrid& grid) {
    const int fine = reference.grid.n();
    const int coarse = grid.n();
    if (reference.grid.R() != grid.R() || fine % coarse != 0) {
        throw GridMismatchError("reference grid (n=" + std::to_string(fine) +
                                ") is not commensurate with n=" + std::to_string(coarse));
    }
    const int ratio = fine / coarse;
    DistributionField out(grid);
    const int half = coarse / 2;
    for (int jx = -half; jx < half; ++jx) {
        for (int jy = -half; jy < half; ++jy) {
            for (int jz = -half; jz < half; ++jz) {
                out[{jx, jy, jz}] = reference[{jx * ratio, jy * ratio, jz * ratio}];
            }
        }
    }
    return out;
}

}  // namespace landau
