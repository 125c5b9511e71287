#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "landau/errors.hpp"
#include "landau/spectral.hpp"
#include "support.hpp"

using namespace landau;
using testing::max_abs;
using testing::max_abs_diff;
using testing::random_values;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> sample(const VelocityGrid& g, auto&& fn) {
    std::vector<double> out(g.inner_count());
    const int half = g.n() / 2;
    std::size_t i = 0;
    for (int x = -half; x < half; ++x)
        for (int y = -half; y < half; ++y)
            for (int z = -half; z < half; ++z) out[i++] = fn(g.coordinate({x, y, z}));
    return out;
}

double max_coeff_except(const SpectralCoeffs& c, const std::vector<Index3>& skip) {
    double m = 0.0;
    const int half = c.size() / 2;
    for (int x = -half; x < half; ++x)
        for (int y = -half; y < half; ++y)
            for (int z = -half; z < half; ++z) {
                const Index3 k{x, y, z};
                if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
                m = std::max(m, std::abs(c.at(k)));
            }
    return m;
}

}  // namespace

TEST_CASE("constant field has only the zero mode") {
    const VelocityGrid g(8, 2.0);
    const std::vector<double> ones(g.inner_count(), 1.0);
    const auto c = analyze(ones, 8, g.R());
    CHECK(std::abs(c.at({0, 0, 0}) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(max_coeff_except(c, {{0, 0, 0}}) < 1e-15);
}

TEST_CASE("cosine along x has two coefficients of one half") {
    const VelocityGrid g(8, 2.0);
    const auto v = sample(g, [&](const Vec3& p) { return std::cos(pi * p[0] / g.R()); });
    const auto c = analyze(v, 8, g.R());
    CHECK(std::abs(c.at({1, 0, 0}) - 0.5) < 1e-15);
    CHECK(std::abs(c.at({-1, 0, 0}) - 0.5) < 1e-15);
    CHECK(max_coeff_except(c, {{1, 0, 0}, {-1, 0, 0}}) < 1e-15);
}

TEST_CASE("analysis and synthesis are inverse") {
    for (int n : {4, 8, 12}) {
        const VelocityGrid g(n, 1.5);
        const auto v = random_values(g.inner_count(), 11 + n);
        const auto back = synthesize(analyze(v, n, g.R()));
        CHECK(max_abs_diff(v, back) <= 1e-12 * max_abs(v));

        // and the other way round, starting from Hermitian coefficients
        const auto c = analyze(v, n, g.R());
        const auto c2 = analyze(synthesize(c), n, g.R());
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < c.data().size(); ++i) {
            diff = std::max(diff, std::abs(c.data()[i] - c2.data()[i]));
            scale = std::max(scale, std::abs(c.data()[i]));
        }
        CHECK(diff <= 1e-12 * scale);
    }
}

TEST_CASE("real fields have Hermitian coefficients and satisfy Parseval") {
    const int n = 8;
    const auto v = random_values(cube_volume(n), 5);
    const auto c = analyze(v, n, 1.0);
    double scale = 0.0, worst = 0.0;
    const int half = n / 2;
    for (int x = -half + 1; x < half; ++x)
        for (int y = -half + 1; y < half; ++y)
            for (int z = -half + 1; z < half; ++z) {
                scale = std::max(scale, std::abs(c.at({x, y, z})));
                worst = std::max(worst, std::abs(c.at({-x, -y, -z}) - std::conj(c.at({x, y, z}))));
            }
    CHECK(worst <= 1e-12 * scale);

    double nodal = 0.0, modal = 0.0;
    for (double x : v) nodal += x * x;
    nodal /= static_cast<double>(cube_volume(n));
    for (const auto& z : c.data()) modal += std::norm(z);
    CHECK(std::abs(nodal - modal) <= 1e-12 * nodal);
}

TEST_CASE("synthesis rejects coefficients of a complex field") {
    SpectralCoeffs c(8, 1.0);
    c.at({1, 0, 0}) = Complex(1.0, 0.0);
    CHECK_THROWS_AS(synthesize(c), SpectralRealnessError);
}

TEST_CASE("zero extension") {
    const VelocityGrid g(8, 1.0);
    DistributionField zero(g);
    const auto ez = zero_extend(zero);
    CHECK(ez.size() == g.extended_count());
    CHECK(max_abs(ez) == 0.0);

    DistributionField spike(g);
    spike[{0, 0, 0}] = 1.0;
    const auto es = zero_extend(spike);
    int nonzero = 0;
    for (double x : es) nonzero += x != 0.0;
    CHECK(nonzero == 1);
    CHECK(es[g.extended_offset({0, 0, 0})] == 1.0);

    DistributionField r(g, random_values(g.inner_count(), 3));
    const auto er = zero_extend(r);
    double s_inner = 0.0, s_ext = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) s_inner += r.values[i];
    // sum the extended array in the same order the inner nodes appear
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        s_ext += er[g.extended_offset(g.embed_index(cube_index(i, 8)))];
    }
    CHECK(s_inner == s_ext);
    double total = 0.0;
    for (double x : er) total += x;
    CHECK(std::abs(total - s_inner) <= 1e-13 * std::abs(s_inner) + 1e-13);
}

TEST_CASE("derivatives") {
    SUBCASE("constant field has zero derivatives") {
        SpectralCoeffs c(8, 1.0);
        c.at({0, 0, 0}) = 3.0;
        for (Index3 a : {Index3{1, 0, 0}, Index3{0, 2, 0}, Index3{1, 1, 1}, Index3{0, 0, 3}}) {
            const auto d = derive(c, a);
            for (const auto& z : d.data()) CHECK(std::abs(z) == 0.0);
        }
    }
    SUBCASE("plane wave is an eigenfunction") {
        const double L = 2.5;
        SpectralCoeffs c(8, L);
        c.at({3, -2, 1}) = Complex(0.25, -0.5);
        const auto d = derive(c, {1, 0, 0});
        const Complex expect = Complex(0.0, pi * 3 / L) * Complex(0.25, -0.5);
        CHECK(std::abs(d.at({3, -2, 1}) - expect) <= 1e-15 * std::abs(expect));
        const auto d2 = derive(c, {0, 1, 2});
        const Complex expect2 = Complex(0.0, pi * -2 / L) * std::pow(Complex(0.0, pi * 1 / L), 2) *
                                Complex(0.25, -0.5);
        CHECK(std::abs(d2.at({3, -2, 1}) - expect2) <= 1e-14 * std::abs(expect2));
    }
    SUBCASE("Gaussian derivative is spectrally accurate") {
        const VelocityGrid g(32, 7.0);
        const auto f = sample(g, [](const Vec3& v) {
            return std::exp(-0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
        });
        const auto exact = sample(g, [](const Vec3& v) {
            return -v[0] * std::exp(-0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
        });
        const auto dx = synthesize(derive(analyze(f, 32, g.R()), {1, 0, 0}));
        CHECK(max_abs_diff(dx, exact) <= 1e-9);
    }
    SUBCASE("Nyquist mode is dropped for odd orders only") {
        SpectralCoeffs c(8, 1.0);
        c.at({-4, 0, 0}) = 1.0;
        CHECK(std::abs(derive(c, {1, 0, 0}).at({-4, 0, 0})) == 0.0);
        CHECK(std::abs(derive(c, {3, 0, 0}).at({-4, 0, 0})) == 0.0);
        CHECK(std::abs(derive(c, {2, 0, 0}).at({-4, 0, 0}) + pi * pi * 16) < 1e-12);
        CHECK(std::abs(derive(c, {0, 1, 0}).at({-4, 0, 0})) == 0.0);  // k_y = 0
        c.at({-4, 1, 0}) = 1.0;
        CHECK(std::abs(derive(c, {0, 1, 0}).at({-4, 1, 0}) - Complex(0.0, pi)) < 1e-14);
    }
    SUBCASE("orders above three are rejected") {
        SpectralCoeffs c(8, 1.0);
        CHECK_THROWS_AS(derive(c, {2, 2, 0}), ConfigError);
        CHECK_THROWS_AS(derive(c, {-1, 0, 0}), ConfigError);
    }
    SUBCASE("mixed partials commute") {
        const auto v = random_values(cube_volume(8), 17);
        const auto c = analyze(v, 8, 1.3);
        const auto xy = derive(derive(c, {1, 0, 0}), {0, 1, 0});
        const auto yx = derive(derive(c, {0, 1, 0}), {1, 0, 0});
        const auto once = derive(c, {1, 1, 0});
        const auto again = derive(c, {1, 1, 0});
        for (std::size_t i = 0; i < c.data().size(); ++i) {
            const double scale = std::abs(once.data()[i]);
            CHECK(std::abs(xy.data()[i] - yx.data()[i]) <= 4e-16 * scale);
            CHECK(std::abs(xy.data()[i] - once.data()[i]) <= 4e-16 * scale);
            CHECK(once.data()[i] == again.data()[i]);
        }
    }
}

TEST_CASE("sampling the extended interpolant at inner nodes") {
    const VelocityGrid g(8, 1.0);
    DistributionField f(g, random_values(g.inner_count(), 23));
    const auto back = sample_inner(analyze(zero_extend(f), 16, g.T()), 8);
    CHECK(max_abs_diff(back, f.values) <= 1e-12 * max_abs(f.values));

    SpectralCoeffs zero(16, g.T());
    CHECK(max_abs(sample_inner(zero, 8)) == 0.0);

    CHECK_THROWS_AS(sample_inner(SpectralCoeffs(8, 1.0), 8), GridMismatchError);
}

TEST_CASE("differentiated samples are linear in the field") {
    const VelocityGrid g(8, 1.0);
    DistributionField a(g, random_values(g.inner_count(), 1));
    DistributionField b(g, random_values(g.inner_count(), 2));
    DistributionField sum(g);
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = 2.0 * a.values[i] - b.values[i];
    auto d = [&](const DistributionField& f) {
        return sample_inner(derive(analyze(zero_extend(f), 16, g.T()), {1, 2, 0}), 8);
    };
    const auto da = d(a), db = d(b), ds = d(sum);
    std::vector<double> combo(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) combo[i] = 2.0 * da[i] - db[i];
    CHECK(max_abs_diff(ds, combo) <= 1e-12 * max_abs(ds));
}

TEST_CASE("transforms may run concurrently on distinct arrays") {
    const int n = 16;
    std::vector<std::vector<double>> inputs, serial(4), parallel(4);
    for (unsigned s = 0; s < 4; ++s) inputs.push_back(random_values(cube_volume(n), 100 + s));
    for (int i = 0; i < 4; ++i) serial[i] = synthesize(derive(analyze(inputs[i], n, 1.0), {0, 1, 1}));
    std::vector<std::thread> pool;
    for (int i = 0; i < 4; ++i) {
        pool.emplace_back([&, i] {
            for (int rep = 0; rep < 5; ++rep)
                parallel[i] = synthesize(derive(analyze(inputs[i], n, 1.0), {0, 1, 1}));
        });
    }
    for (auto& t : pool) t.join();
    for (int i = 0; i < 4; ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("shape checks") {
    CHECK_THROWS_AS(analyze(std::vector<double>(10, 0.0), 8, 1.0), GridMismatchError);
    CHECK_THROWS_AS(SpectralCoeffs(7, 1.0), ConfigError);
    const VelocityGrid g(8, 1.0);
    CHECK_THROWS_AS(DistributionField(g, std::vector<double>(7)), GridMismatchError);
}
