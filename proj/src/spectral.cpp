#include "landau/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "landau/errors.hpp"

namespace landau {

void* fftw_aligned_alloc(std::size_t bytes) {
    void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
    if (p == nullptr) throw std::bad_alloc();
    return p;
}

void fftw_aligned_free(void* p) noexcept { fftw_free(p); }

namespace {

constexpr double kImagTolerance = 1e-10;

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction) and kept for the
// life of the process.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int size, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(size, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        ComplexArray in(cube_volume(size)), out(cube_volume(size));
        fftw_plan plan = fftw_plan_dft_3d(size, size, size, reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), sign,
                                          FFTW_ESTIMATE);
        plans_.emplace(key, plan);
        return plan;
    }

    void count(int size, bool forward) {
        std::lock_guard lock(mutex_);
        auto& t = tally_[size];
        (forward ? t.forward : t.inverse) += 1;
    }

    TransformTally tally(int size) {
        std::lock_guard lock(mutex_);
        auto it = tally_.find(size);
        return it == tally_.end() ? TransformTally{} : it->second;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
    std::map<int, TransformTally> tally_;
};

void execute(int size, int sign, const ComplexArray& in, ComplexArray& out) {
    auto& cache = PlanCache::instance();
    fftw_plan plan = cache.get(size, sign);
    // FFTW's new-array interface takes a non-const input pointer but does not
    // modify it for out-of-place complex transforms.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    cache.count(size, sign == FFTW_FORWARD);
}

// Position along one axis: storage s = j + size/2  ->  transform j mod size.
std::vector<std::size_t> storage_to_wrapped(int size) {
    std::vector<std::size_t> map(static_cast<std::size_t>(size));
    for (int s = 0; s < size; ++s) map[s] = static_cast<std::size_t>((s + size / 2) % size);
    return map;
}

void check_size(int size) {
    if (size < 2 || size % 2 != 0) {
        throw ConfigError("transform size must be even, got " + std::to_string(size));
    }
}

}  // namespace

SpectralCoeffs::SpectralCoeffs(int size, double halfwidth)
    : size_(size), halfwidth_(halfwidth), data_(cube_volume(size), Complex{0.0, 0.0}) {
    check_size(size);
}

DistributionField::DistributionField(const VelocityGrid& g)
    : grid(g), values(g.inner_count(), 0.0) {}

DistributionField::DistributionField(const VelocityGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.inner_count()) {
        throw GridMismatchError("field has " + std::to_string(values.size()) +
                                " values, grid expects " + std::to_string(grid.inner_count()));
    }
}

SpectralCoeffs analyze(std::span<const double> values, int size, double halfwidth) {
    check_size(size);
    const std::size_t total = cube_volume(size);
    if (values.size() != total) {
        throw GridMismatchError("analyze: expected " + std::to_string(total) + " values, got " +
                                std::to_string(values.size()));
    }
    const auto wrap = storage_to_wrapped(size);
    const auto s = static_cast<std::size_t>(size);

    ComplexArray in(total);
    std::size_t offset = 0;
    for (std::size_t x = 0; x < s; ++x) {
        for (std::size_t y = 0; y < s; ++y) {
            const std::size_t row = (wrap[x] * s + wrap[y]) * s;
            for (std::size_t z = 0; z < s; ++z) in[row + wrap[z]] = Complex{values[offset++], 0.0};
        }
    }

    SpectralCoeffs out(size, halfwidth);
    execute(size, FFTW_FORWARD, in, out.data());
    const double scale = 1.0 / static_cast<double>(total);
    for (auto& c : out.data()) c *= scale;
    return out;
}

std::vector<double> synthesize(const SpectralCoeffs& coeffs) {
    const int size = coeffs.size();
    const std::size_t total = cube_volume(size);
    ComplexArray out(total);
    execute(size, FFTW_BACKWARD, coeffs.data(), out);

    double max_abs = 0.0;
    double max_imag = 0.0;
    for (const auto& v : out) {
        max_abs = std::max(max_abs, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > kImagTolerance * max_abs) {
        throw SpectralRealnessError("synthesized field has relative imaginary part " +
                                    std::to_string(max_imag / max_abs));
    }

    const auto wrap = storage_to_wrapped(size);
    const auto s = static_cast<std::size_t>(size);
    std::vector<double> values(total);
    std::size_t offset = 0;
    for (std::size_t x = 0; x < s; ++x) {
        for (std::size_t y = 0; y < s; ++y) {
            const std::size_t row = (wrap[x] * s + wrap[y]) * s;
            for (std::size_t z = 0; z < s; ++z) values[offset++] = out[row + wrap[z]].real();
        }
    }
    return values;
}

std::vector<double> zero_extend(const DistributionField& f) {
    const int n = f.grid.n();
    const int m = f.grid.extended_n();
    const auto sn = static_cast<std::size_t>(n);
    const auto sm = static_cast<std::size_t>(m);
    const std::size_t shift = sn / 2;  // inner storage s maps to s + n/2 outside
    std::vector<double> ext(f.grid.extended_count(), 0.0);
    for (std::size_t x = 0; x < sn; ++x) {
        for (std::size_t y = 0; y < sn; ++y) {
            const double* src = f.values.data() + (x * sn + y) * sn;
            double* dst = ext.data() + ((x + shift) * sm + (y + shift)) * sm + shift;
            std::copy(src, src + sn, dst);
        }
    }
    return ext;
}

SpectralCoeffs derive(const SpectralCoeffs& coeffs, const Index3& alpha) {
    const int order = alpha[0] + alpha[1] + alpha[2];
    if (alpha[0] < 0 || alpha[1] < 0 || alpha[2] < 0 || order > 3) {
        throw ConfigError("derivative order must satisfy 0 <= |alpha| <= 3");
    }
    SpectralCoeffs out = coeffs;
    if (order == 0) return out;

    const int size = coeffs.size();
    const auto s = static_cast<std::size_t>(size);
    const double scale = std::numbers::pi / coeffs.halfwidth();

    // Per-axis real factor (pi k / L)^alpha_a, Nyquist zeroed for odd powers.
    std::array<std::vector<double>, 3> axis;
    for (int a = 0; a < 3; ++a) {
        axis[a].resize(s);
        for (std::size_t p = 0; p < s; ++p) {
            const int k = SpectralCoeffs::wave_number(p, size);
            if (alpha[a] % 2 == 1 && k == -size / 2) {
                axis[a][p] = 0.0;
                continue;
            }
            axis[a][p] = std::pow(scale * k, alpha[a]);
        }
    }
    // Multiplication by i^order is a component swap with signs.
    const int quarter = order % 4;
    auto& data = out.data();
    for (std::size_t x = 0; x < s; ++x) {
        for (std::size_t y = 0; y < s; ++y) {
            const double fxy = axis[0][x] * axis[1][y];
            Complex* row = data.data() + (x * s + y) * s;
            for (std::size_t z = 0; z < s; ++z) {
                const double factor = fxy * axis[2][z];
                const double re = row[z].real() * factor;
                const double im = row[z].imag() * factor;
                switch (quarter) {
                    case 0: row[z] = {re, im}; break;
                    case 1: row[z] = {-im, re}; break;
                    case 2: row[z] = {-re, -im}; break;
                    default: row[z] = {im, -re}; break;
                }
            }
        }
    }
    return out;
}

std::vector<double> restrict_to_inner(std::span<const double> extended, int n) {
    const int m = 2 * n;
    if (extended.size() != cube_volume(m)) {
        throw GridMismatchError("restrict_to_inner: array does not match the extended lattice");
    }
    const auto sn = static_cast<std::size_t>(n);
    const auto sm = static_cast<std::size_t>(m);
    const std::size_t shift = sn / 2;
    std::vector<double> inner(cube_volume(n));
    for (std::size_t x = 0; x < sn; ++x) {
        for (std::size_t y = 0; y < sn; ++y) {
            const double* src = extended.data() + ((x + shift) * sm + (y + shift)) * sm + shift;
            std::copy(src, src + sn, inner.data() + (x * sn + y) * sn);
        }
    }
    return inner;
}

std::vector<double> sample_inner(const SpectralCoeffs& extended, int n) {
    if (extended.size() != 2 * n) {
        throw GridMismatchError("sample_inner: coefficients are not on the extended lattice");
    }
    return restrict_to_inner(synthesize(extended), n);
}

TransformTally transform_tally(int size) { return PlanCache::instance().tally(size); }

}  // namespace landau
