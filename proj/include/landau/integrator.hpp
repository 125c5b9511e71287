#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace landau {

enum class Scheme { plain, steady };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme scheme);

struct StepperConfig {
    double dt = 0.0;
    double t_final = 0.0;
    Scheme scheme = Scheme::plain;
};

// Throws ConfigError for non-positive or non-finite dt / t_final.
void validate(const StepperConfig& config);

// Right-hand side of df/dt = Op(f).
using RhsFunction = std::function<std::vector<double>(std::span<const double>)>;

/// Three-stage strong-stability-preserving Runge-Kutta step (Shu-Osher):
///
///     f1 = f + dt Op(f)
///     f2 = 3/4 f + 1/4 (f1 + dt Op(f1))
///     f+ = 1/3 f + 2/3 (f2 + dt Op(f2))
///
/// evaluated in increment form, f + dt (k1 + k2 + 4 k3)/6, so a vanishing
/// right-hand side leaves f unchanged bit for bit. Throws BlowUpError (with
/// time t and the stage) when a stage produces non-finite values.
std::vector<double> rk3_step(std::span<const double> f, const RhsFunction& rhs, double dt,
                             double t = 0.0);

}  // namespace landau
