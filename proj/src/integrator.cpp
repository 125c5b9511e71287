#include "landau/integrator.hpp"

#include <cmath>

#include "landau/errors.hpp"

namespace landau {

namespace {

void require_finite(std::span<const double> values, double t, int stage) {
    for (double v : values) {
        if (!std::isfinite(v)) throw BlowUpError(t, stage);
    }
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
    if (name == "plain") return Scheme::plain;
    if (name == "steady" || name == "steady-preserving") return Scheme::steady;
    throw ConfigError("unknown scheme '" + name + "' (expected plain or steady)");
}

std::string to_string(Scheme scheme) { return scheme == Scheme::plain ? "plain" : "steady"; }

void validate(const StepperConfig& config) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        throw ConfigError("time step must be positive and finite");
    }
    if (!(config.t_final > 0.0) || !std::isfinite(config.t_final)) {
        throw ConfigError("final time must be positive and finite");
    }
}

std::vector<double> rk3_step(std::span<const double> f, const RhsFunction& rhs, double dt,
                             double t) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    const std::size_t size = f.size();

    const std::vector<double> k1 = rhs(f);
    require_finite(k1, t, 1);
    std::vector<double> stage(size);
    for (std::size_t i = 0; i < size; ++i) stage[i] = f[i] + dt * k1[i];

    const std::vector<double> k2 = rhs(stage);
    require_finite(k2, t + dt, 2);
    for (std::size_t i = 0; i < size; ++i) stage[i] = f[i] + 0.25 * dt * (k1[i] + k2[i]);

    const std::vector<double> k3 = rhs(stage);
    require_finite(k3, t + 0.5 * dt, 3);
    std::vector<double> next(size);
    for (std::size_t i = 0; i < size; ++i) {
        next[i] = f[i] + dt * (k1[i] + k2[i] + 4.0 * k3[i]) / 6.0;
    }
    require_finite(next, t + dt, 3);
    return next;
}

}  // namespace landau
