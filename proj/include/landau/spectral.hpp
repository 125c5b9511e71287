#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <new>
#include <span>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

// Allocator returning FFTW-aligned storage, so every buffer handed to a cached
// plan has the alignment the plan was created with.
template <class T>
struct FftwAllocator {
    using value_type = T;

    FftwAllocator() noexcept = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}

    T* allocate(std::size_t count);
    void deallocate(T* p, std::size_t) noexcept;

    template <class U>
    bool operator==(const FftwAllocator<U>&) const noexcept {
        return true;
    }
};

void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;

template <class T>
T* FftwAllocator<T>::allocate(std::size_t count) {
    return static_cast<T*>(fftw_aligned_alloc(count * sizeof(T)));
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
    fftw_aligned_free(p);
}

using Complex = std::complex<double>;
using ComplexArray = std::vector<Complex, FftwAllocator<Complex>>;

/// Fourier coefficients c(k), k in [-size/2, size/2-1]^3, of a trigonometric
/// polynomial on [-L, L]^3:
///
///     f(v) = sum_k c(k) exp(i pi k.v / L)
///
/// Stored in transform order (each k taken modulo size).
class SpectralCoeffs {
public:
    SpectralCoeffs(int size, double halfwidth);

    int size() const noexcept { return size_; }
    double halfwidth() const noexcept { return halfwidth_; }

    Complex& at(const Index3& k) { return data_[wrapped_offset(k, size_)]; }
    const Complex& at(const Index3& k) const { return data_[wrapped_offset(k, size_)]; }

    ComplexArray& data() noexcept { return data_; }
    const ComplexArray& data() const noexcept { return data_; }

    static std::size_t wrapped_offset(const Index3& k, int size) noexcept {
        auto wrap = [size](int v) { return static_cast<std::size_t>(((v % size) + size) % size); };
        const auto s = static_cast<std::size_t>(size);
        return (wrap(k[0]) * s + wrap(k[1])) * s + wrap(k[2]);
    }

    // Signed wave number of transform-order position p along one axis.
    static int wave_number(std::size_t p, int size) noexcept {
        const int q = static_cast<int>(p);
        return q < size / 2 ? q : q - size;
    }

private:
    int size_;
    double halfwidth_;
    ComplexArray data_;
};

/// Nodal values on the inner lattice; the solver state.
struct DistributionField {
    explicit DistributionField(const VelocityGrid& g);
    DistributionField(const VelocityGrid& g, std::vector<double> v);

    double& operator[](const Index3& j) { return values[grid.inner_offset(j)]; }
    double operator[](const Index3& j) const { return values[grid.inner_offset(j)]; }

    VelocityGrid grid;
    std::vector<double> values;
};

// Discrete transform pair. `values` are in cube storage order.
SpectralCoeffs analyze(std::span<const double> values, int size, double halfwidth);
std::vector<double> synthesize(const SpectralCoeffs& coeffs);

/// Copies the inner values onto the extended lattice, zero elsewhere.
std::vector<double> zero_extend(const DistributionField& f);

/// Multiplies c(k) by (i pi / L)^|alpha| k^alpha. Modes with k_a = -size/2 are
/// zeroed on every axis where alpha_a is odd, which keeps derivatives of real
/// fields real. Requires |alpha| <= 3.
SpectralCoeffs derive(const SpectralCoeffs& coeffs, const Index3& alpha);

/// Synthesizes coefficients given on the extended (2n) lattice and restricts
/// the result to the inner n-lattice nodes.
std::vector<double> sample_inner(const SpectralCoeffs& extended, int n);

/// Values on the inner lattice extracted from an extended-lattice array.
std::vector<double> restrict_to_inner(std::span<const double> extended, int n);

// Process-wide count of fast transforms executed, per transform size.
struct TransformTally {
    std::uint64_t forward = 0;
    std::uint64_t inverse = 0;
};
TransformTally transform_tally(int size);

}  // namespace landau
