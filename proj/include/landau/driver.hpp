#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "landau/diagnostics.hpp"
#include "landau/integrator.hpp"
#include "landau/spectral.hpp"

namespace landau {

enum class Preset { maxwellian_accuracy, rosenbluth, two_gaussians, custom };

Preset parse_preset(const std::string& name);
std::string to_string(Preset preset);

/// User-facing experiment description. Unset optionals take the preset's
/// defaults when the configuration is resolved.
struct ExperimentConfig {
    Preset preset = Preset::maxwellian_accuracy;
    std::optional<int> n;
    std::optional<double> R;
    std::optional<double> dt;
    std::optional<double> t_final;
    std::optional<Scheme> scheme;
    int diag_every = 1;
    int dump_every = 0;  // 0 disables periodic dumps
    std::optional<std::filesystem::path> kernel_cache;
    std::optional<int> kernel_fine;
    std::filesystem::path out_dir = "landau-out";
    std::optional<std::filesystem::path> reference;
    std::optional<std::filesystem::path> ic_file;
    // run.json of an earlier run; its equilibrium replaces the one derived
    // from the initial moments (used when continuing a steady-scheme run).
    std::optional<std::filesystem::path> equilibrium_from;
    bool clip_negative = false;
    bool rescale_dt = true;
};

// Fixed parameters of each preset, including the lattice size at which its
// time step was found stable.
struct PresetDefaults {
    int n;
    double R;
    double dt;
    double t_final;
    Scheme scheme;
    int n_ref;
};

PresetDefaults preset_defaults(Preset preset);

struct ResolvedConfig {
    ExperimentConfig source;
    int n = 0;
    double R = 0.0;
    double dt = 0.0;
    double t_final = 0.0;
    Scheme scheme = Scheme::plain;
    int kernel_fine = 0;
};

/// Applies preset defaults. When n is overridden and dt is not, dt shrinks by
/// (n_ref/n)^2 for n above the preset's reference size (logged). A custom
/// preset takes n and R from the initial-condition file.
ResolvedConfig resolve(const ExperimentConfig& config, std::ostream& log);

struct InitialState {
    DistributionField field;
    double t0 = 0.0;
};

/// Nodal values of the preset's initial distribution on `grid`; the custom
/// preset reads the field dump named by ic_file.
InitialState build_initial_condition(const ExperimentConfig& config, const VelocityGrid& grid);

// Column names of diagnostics.csv.
const std::vector<std::string>& diagnostics_columns();

struct RunResult {
    int exit_status = 0;  // 0 success, 3 blow-up
    long steps = 0;
    double t = 0.0;
    std::vector<MomentSet> rows;
    std::string message;
};

/// Integrates the configured experiment, writing diagnostics.csv, run.json and
/// field dumps into out_dir.
RunResult run(const ExperimentConfig& config, std::ostream& log);

// Applies LANDAU_THREADS (if set) as the cap on worker threads.
void apply_thread_limit_from_env();

}  // namespace landau
