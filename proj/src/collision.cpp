#include "landau/collision.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "landau/errors.hpp"

namespace landau {

namespace {

constexpr std::array<std::array<int, 2>, 6> kHessianPairs = {
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

Index3 unit(int a) {
    Index3 e{0, 0, 0};
    e[a] = 1;
    return e;
}

void check_values(std::span<const double> values, const VelocityGrid& grid) {
    if (values.size() != grid.inner_count()) {
        throw GridMismatchError("field size " + std::to_string(values.size()) +
                                " does not match the workspace grid");
    }
}

}  // namespace

CollisionWorkspace::CollisionWorkspace(const VelocityGrid& grid,
                                       std::shared_ptr<const KernelTable> kernel)
    : grid_(grid), kernel_(std::move(kernel)) {
    if (!kernel_) throw ConfigError("collision workspace needs a kernel table");
    if (!kernel_->matches(grid_)) {
        throw GridMismatchError("kernel table (n=" + std::to_string(kernel_->n()) +
                                ", T=" + std::to_string(kernel_->T()) +
                                ") does not match grid (n=" + std::to_string(grid_.n()) +
                                ", T=" + std::to_string(grid_.T()) + ")");
    }
}

SpectralCoeffs rosenbluth_potential(std::span<const double> values, const CollisionWorkspace& ws) {
    const auto& grid = ws.grid();
    check_values(values, grid);
    const int m = grid.extended_n();
    DistributionField f(grid, std::vector<double>(values.begin(), values.end()));
    SpectralCoeffs g = analyze(zero_extend(f), m, grid.T());

    // Kernel values are stored in cube order; coefficients in transform order.
    const auto& psi = ws.kernel().values();
    auto& data = g.data();
    const auto M = static_cast<std::size_t>(m);
    std::vector<std::size_t> cube_pos(M);
    for (std::size_t p = 0; p < M; ++p) {
        cube_pos[p] = static_cast<std::size_t>(SpectralCoeffs::wave_number(p, m) + m / 2);
    }
    for (std::size_t px = 0; px < M; ++px) {
        for (std::size_t py = 0; py < M; ++py) {
            const double* psi_row = psi.data() + (cube_pos[px] * M + cube_pos[py]) * M;
            Complex* row = data.data() + (px * M + py) * M;
            for (std::size_t pz = 0; pz < M; ++pz) row[pz] *= psi_row[cube_pos[pz]];
        }
    }
    return g;
}

SpectralCoeffs rosenbluth_potential(const DistributionField& f, const CollisionWorkspace& ws) {
    if (!(f.grid == ws.grid())) throw GridMismatchError("field grid differs from workspace grid");
    return rosenbluth_potential(std::span<const double>(f.values), ws);
}

std::vector<double> collision_operator(std::span<const double> values, CollisionWorkspace& ws) {
    const auto& grid = ws.grid();
    check_values(values, grid);
    const int n = grid.n();
    const std::size_t count = grid.inner_count();

    const SpectralCoeffs g = rosenbluth_potential(values, ws);

    // Nine independent derivative samples of g at the inner nodes. Exceptions
    // cannot cross the parallel region, so the first one is carried out.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int task = 0; task < 9; ++task) {
        try {
            if (task < 6) {
                const auto [a, b] = kHessianPairs[task];
                Index3 alpha{0, 0, 0};
                alpha[a] += 1;
                alpha[b] += 1;
                ws.hessian_[task] = sample_inner(derive(g, alpha), n);
            } else {
                const int a = task - 6;
                SpectralCoeffs sum(g.size(), g.halfwidth());
                for (int b = 0; b < 3; ++b) {
                    Index3 alpha = unit(a);
                    alpha[b] += 2;
                    const SpectralCoeffs term = derive(g, alpha);
                    for (std::size_t i = 0; i < sum.data().size(); ++i) sum.data()[i] += term.data()[i];
                }
                ws.grad_laplacian_[a] = sample_inner(sum, n);
            }
        } catch (...) {
#pragma omp critical(landau_collision_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const SpectralCoeffs fc = analyze(values, n, grid.R());
    for (int a = 0; a < 3; ++a) ws.gradient_[a] = synthesize(derive(fc, unit(a)));

    for (int a = 0; a < 3; ++a) {
        auto& flux = ws.flux_[a];
        flux.assign(count, 0.0);
        const auto& h0 = ws.hessian(a, 0);
        const auto& h1 = ws.hessian(a, 1);
        const auto& h2 = ws.hessian(a, 2);
        const auto& d = ws.grad_laplacian_[a];
        const auto& g0 = ws.gradient_[0];
        const auto& g1 = ws.gradient_[1];
        const auto& g2 = ws.gradient_[2];
        for (std::size_t i = 0; i < count; ++i) {
            flux[i] = h0[i] * g0[i] + h1[i] * g1[i] + h2[i] * g2[i] - d[i] * values[i];
        }
    }

    SpectralCoeffs divergence(n, grid.R());
    for (int a = 0; a < 3; ++a) {
        const SpectralCoeffs term = derive(analyze(ws.flux_[a], n, grid.R()), unit(a));
        for (std::size_t i = 0; i < divergence.data().size(); ++i) {
            divergence.data()[i] += term.data()[i];
        }
    }
    return synthesize(divergence);
}

std::vector<double> collision_operator(const DistributionField& f, CollisionWorkspace& ws) {
    if (!(f.grid == ws.grid())) throw GridMismatchError("field grid differs from workspace grid");
    return collision_operator(std::span<const double>(f.values), ws);
}

DistributionField maxwellian_field(double rho, const Vec3& u, double temp,
                                   const VelocityGrid& grid) {
    if (!(rho > 0.0) || !(temp > 0.0)) {
        throw ConfigError("Maxwellian needs positive density and temperature");
    }
    DistributionField f(grid);
    const double peak = rho / std::pow(2.0 * std::numbers::pi * temp, 1.5);
    const int half = grid.n() / 2;
    std::size_t i = 0;
    for (int jx = -half; jx < half; ++jx) {
        const double dx = grid.axis_coordinate(jx) - u[0];
        for (int jy = -half; jy < half; ++jy) {
            const double dy = grid.axis_coordinate(jy) - u[1];
            for (int jz = -half; jz < half; ++jz) {
                const double dz = grid.axis_coordinate(jz) - u[2];
                f.values[i++] = peak * std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * temp));
            }
        }
    }
    return f;
}

SteadyStateOperator::SteadyStateOperator(const DistributionField& equilibrium,
                                         CollisionWorkspace& ws)
    : ws_(&ws) {
    if (!(equilibrium.grid == ws.grid())) {
        throw GridMismatchError("equilibrium field grid differs from workspace grid");
    }
    equilibrium_term_ = collision_operator(equilibrium, ws);
}

std::vector<double> SteadyStateOperator::operator()(std::span<const double> values) const {
    auto out = collision_operator(values, *ws_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= equilibrium_term_[i];
    return out;
}

std::vector<double> steady_state_operator(const DistributionField& f, const DistributionField& m_n,
                                          CollisionWorkspace& ws) {
    if (!(f.grid == m_n.grid)) throw GridMismatchError("field and equilibrium grids differ");
    return SteadyStateOperator(m_n, ws)(f.values);
}

}  // namespace landau
