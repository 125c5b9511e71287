#pragma once

#include <array>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "landau/grid.hpp"
#include "landau/kernel.hpp"
#include "landau/spectral.hpp"

namespace landau {

/// Scratch state for evaluating the collision operator on one grid. A
/// workspace is used by one thread at a time; several workspaces may share
/// the same kernel table.
class CollisionWorkspace {
public:
    CollisionWorkspace(const VelocityGrid& grid, std::shared_ptr<const KernelTable> kernel);

    const VelocityGrid& grid() const noexcept { return grid_; }
    const KernelTable& kernel() const noexcept { return *kernel_; }
    std::shared_ptr<const KernelTable> kernel_ptr() const noexcept { return kernel_; }

    // Fields sampled at the inner nodes during the last evaluation.
    const std::vector<double>& hessian(int a, int b) const { return hessian_[pair_slot(a, b)]; }
    const std::vector<double>& grad_laplacian(int a) const { return grad_laplacian_[a]; }
    const std::vector<double>& gradient(int a) const { return gradient_[a]; }
    const std::vector<double>& flux(int a) const { return flux_[a]; }

    static int pair_slot(int a, int b) noexcept {
        if (a > b) std::swap(a, b);
        // (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
        return a == 0 ? b : (a == 1 ? 2 + b : 5);
    }

private:
    friend std::vector<double> collision_operator(std::span<const double>, CollisionWorkspace&);

    VelocityGrid grid_;
    std::shared_ptr<const KernelTable> kernel_;
    std::array<std::vector<double>, 6> hessian_;
    std::array<std::vector<double>, 3> grad_laplacian_;
    std::array<std::vector<double>, 3> gradient_;
    std::array<std::vector<double>, 3> flux_;
};

/// Coefficients of the Rosenbluth potential g = |.| * f on the extended
/// lattice: the zero-extended field's coefficients times the kernel table.
SpectralCoeffs rosenbluth_potential(const DistributionField& f, const CollisionWorkspace& ws);
SpectralCoeffs rosenbluth_potential(std::span<const double> values, const CollisionWorkspace& ws);

/// Collocation approximation of the Landau operator at the inner nodes,
///
///     C_n(f) = div I_n( Hess(g) grad f - grad(Lap g) f ).
///
/// Hessian and grad-Laplacian of g come from the extended lattice; grad f and
/// the divergence are spectral on the inner lattice (half-width R). The
/// result sums to zero up to roundoff.
std::vector<double> collision_operator(std::span<const double> values, CollisionWorkspace& ws);
std::vector<double> collision_operator(const DistributionField& f, CollisionWorkspace& ws);

/// Nodal values of rho (2 pi temp)^{-3/2} exp(-|v-u|^2 / (2 temp)).
DistributionField maxwellian_field(double rho, const Vec3& u, double temp, const VelocityGrid& grid);

/// C_n(f) - C_n(M_n) with the equilibrium term evaluated once.
class SteadyStateOperator {
public:
    SteadyStateOperator(const DistributionField& equilibrium, CollisionWorkspace& ws);

    std::vector<double> operator()(std::span<const double> values) const;
    const std::vector<double>& equilibrium_term() const noexcept { return equilibrium_term_; }

private:
    CollisionWorkspace* ws_;
    std::vector<double> equilibrium_term_;
};

std::vector<double> steady_state_operator(const DistributionField& f, const DistributionField& m_n,
                                          CollisionWorkspace& ws);

}  // namespace landau
