#include <doctest.h>

#include <cstring>
#include <fstream>

#include "landau/binary_io.hpp"
#include "landau/errors.hpp"
#include "landau/field_io.hpp"
#include "support.hpp"

using namespace landau;

TEST_CASE("field dump round trip is bit exact") {
    const auto dir = testing::scratch_dir("io");
    const VelocityGrid g(8, 2.75);
    DistributionField f(g, testing::random_values(g.inner_count(), 9));
    f.values[5] = -0.0;
    f.values[6] = 1e-300;
    write_field_dump(f, 0.125, dir / "f.lspf");
    const auto back = read_field_dump(dir / "f.lspf");
    CHECK(back.t == 0.125);
    CHECK(back.field.grid == g);
    CHECK(std::memcmp(back.field.values.data(), f.values.data(), f.values.size() * sizeof(double)) == 0);
}

TEST_CASE("field dump layout") {
    const auto dir = testing::scratch_dir("layout");
    const VelocityGrid g(4, 1.0);
    DistributionField f(g);
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = static_cast<double>(i);
    write_field_dump(f, 2.0, dir / "f.lspf");
    auto r = binio::Reader::from_file(dir / "f.lspf");
    r.expect_magic("LSPF");
    CHECK(r.u32() == 1);
    CHECK(r.u32() == 4);
    CHECK(r.f64() == 1.0);
    CHECK(r.f64() == 2.0);
    r.mark_payload();
    const auto values = r.f64_block(64);
    CHECK(values[g.inner_offset({-2, -2, -1})] == 1.0);
    CHECK(values[g.inner_offset({1, 1, 1})] == 63.0);
    r.verify_crc_of_payload();
    r.expect_end();
    CHECK(std::filesystem::file_size(dir / "f.lspf") == 4 + 4 + 4 + 8 + 8 + 64 * 8 + 4);
}

TEST_CASE("damaged dumps are rejected") {
    const auto dir = testing::scratch_dir("damaged");
    const VelocityGrid g(4, 1.0);
    DistributionField f(g, testing::random_values(g.inner_count(), 4));
    const auto path = dir / "f.lspf";
    write_field_dump(f, 0.0, path);

    const auto cut = dir / "cut.lspf";
    std::filesystem::copy_file(path, cut);
    std::filesystem::resize_file(cut, std::filesystem::file_size(path) - 9);
    CHECK_THROWS_AS(read_field_dump(cut), FileFormatError);

    const auto bad = dir / "bad.lspf";
    std::filesystem::copy_file(path, bad);
    {
        std::fstream io(bad, std::ios::in | std::ios::out | std::ios::binary);
        io.seekp(40);
        io.put('\x01');
    }
    CHECK_THROWS_AS(read_field_dump(bad), FileFormatError);

    CHECK_THROWS_AS(read_field_dump(dir / "missing.lspf"), FileFormatError);
}

TEST_CASE("finer reference restricts onto shared nodes") {
    const VelocityGrid coarse(8, 3.0), fine(16, 3.0);
    DistributionField ref(fine);
    const int half = 8;
    for (int x = -half; x < half; ++x)
        for (int y = -half; y < half; ++y)
            for (int z = -half; z < half; ++z) ref[{x, y, z}] = 100.0 * x + 10.0 * y + z;
    const auto r = restrict_reference(ref, coarse);
    CHECK(r.grid == coarse);
    for (int x = -4; x < 4; ++x)
        for (int y = -4; y < 4; ++y)
            for (int z = -4; z < 4; ++z) CHECK(r[{x, y, z}] == ref[{2 * x, 2 * y, 2 * z}]);

    CHECK_THROWS_AS(restrict_reference(ref, VelocityGrid(8, 2.0)), GridMismatchError);
    CHECK_THROWS_AS(restrict_reference(ref, VelocityGrid(12, 3.0)), GridMismatchError);
}

TEST_CASE("little-endian primitives") {
    binio::Writer w;
    w.u32(0x01020304u);
    w.f64(1.0);
    CHECK(w.bytes()[0] == 0x04);
    CHECK(w.bytes()[3] == 0x01);
    CHECK(w.bytes()[4 + 7] == 0x3f);
    CHECK(w.bytes()[4 + 6] == 0xf0);
    const unsigned char text[] = {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
    CHECK(binio::crc32_of(text) == 0xCBF43926u);
}
