#include "landau/driver.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "landau/collision.hpp"
#include "landau/errors.hpp"
#include "landau/field_io.hpp"
#include "landau/kernel.hpp"

namespace landau {

namespace {

constexpr int kBlowUpStatus = 3;

// Rosenbluth test distribution parameters.
constexpr double kRosenbluthSigma = 0.3;
constexpr double kRosenbluthS = 10.0;
// Two-Gaussian test: width pi/10, centers at +-2 sigma e1.
constexpr double kTwoGaussianSigma = std::numbers::pi / 10.0;

struct Equilibrium {
    double rho;
    Vec3 u;
    double temp;
};

DistributionField rosenbluth_field(const VelocityGrid& grid) {
    DistributionField f(grid);
    const double s = kRosenbluthS, sigma = kRosenbluthSigma;
    const int half = grid.n() / 2;
    std::size_t i = 0;
    for (int jx = -half; jx < half; ++jx) {
        for (int jy = -half; jy < half; ++jy) {
            for (int jz = -half; jz < half; ++jz) {
                const Vec3 v = grid.coordinate({jx, jy, jz});
                const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                const double d = r - sigma;
                f.values[i++] = std::exp(-s * d * d / (sigma * sigma)) / (s * s);
            }
        }
    }
    return f;
}

DistributionField two_gaussian_field(const VelocityGrid& grid) {
    DistributionField f(grid);
    const double sigma = kTwoGaussianSigma;
    const double var = sigma * sigma;
    const double norm = 1.0 / (2.0 * std::pow(2.0 * std::numbers::pi * var, 1.5));
    const double shift = 2.0 * sigma;
    const int half = grid.n() / 2;
    std::size_t i = 0;
    for (int jx = -half; jx < half; ++jx) {
        for (int jy = -half; jy < half; ++jy) {
            for (int jz = -half; jz < half; ++jz) {
                const Vec3 v = grid.coordinate({jx, jy, jz});
                const double t2 = v[1] * v[1] + v[2] * v[2];
                const double a = (v[0] - shift) * (v[0] - shift) + t2;
                const double b = (v[0] + shift) * (v[0] + shift) + t2;
                f.values[i++] = norm * (std::exp(-a / (2.0 * var)) + std::exp(-b / (2.0 * var)));
            }
        }
    }
    return f;
}

Equilibrium read_equilibrium(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read equilibrium manifest " + path.string());
    try {
        const auto j = nlohmann::json::parse(in);
        const auto& e = j.at("equilibrium");
        return Equilibrium{e.at("rho").get<double>(),
                           {e.at("u").at(0).get<double>(), e.at("u").at(1).get<double>(),
                            e.at("u").at(2).get<double>()},
                           e.at("temp").get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed equilibrium manifest " + path.string() + ": " + e.what());
    }
}

void write_row(std::ostream& out, const MomentSet& m, double mass_drift,
               const std::optional<ErrorNorms>& err) {
    out << m.t << ',' << m.rho << ',' << m.u[0] << ',' << m.u[1] << ',' << m.u[2] << ','
        << m.temp << ',' << m.P[0][0] << ',' << m.P[0][1] << ',' << m.P[0][2] << ','
        << m.P[1][1] << ',' << m.P[1][2] << ',' << m.P[2][2] << ',' << m.m4 << ','
        << m.entropy << ',' << m.rel_entropy << ',' << m.nonpos_count << ',' << mass_drift;
    if (err) {
        out << ',' << err->l1 << ',' << err->l2 << ',' << err->linf;
    } else {
        out << ",,,";
    }
    out << '\n';
}

std::string step_name(long step) {
    std::ostringstream s;
    s << "field_" << std::setw(6) << std::setfill('0') << step << ".lspf";
    return s.str();
}

void clip_and_renormalize(std::vector<double>& values) {
    double before = 0.0, after = 0.0;
    for (double v : values) before += v;
    for (auto& v : values) {
        v = std::max(v, 0.0);
        after += v;
    }
    if (after > 0.0) {
        const double scale = before / after;
        for (auto& v : values) v *= scale;
    }
}

}  // namespace

Preset parse_preset(const std::string& name) {
    if (name == "maxwellian-accuracy") return Preset::maxwellian_accuracy;
    if (name == "rosenbluth") return Preset::rosenbluth;
    if (name == "two-gaussians") return Preset::two_gaussians;
    if (name == "custom") return Preset::custom;
    throw ConfigError("unknown preset '" + name + "'");
}

std::string to_string(Preset preset) {
    switch (preset) {
        case Preset::maxwellian_accuracy: return "maxwellian-accuracy";
        case Preset::rosenbluth: return "rosenbluth";
        case Preset::two_gaussians: return "two-gaussians";
        case Preset::custom: return "custom";
    }
    return "unknown";
}

PresetDefaults preset_defaults(Preset preset) {
    switch (preset) {
        case Preset::maxwellian_accuracy: return {16, 7.0, 0.005, 1.0, Scheme::plain, 32};
        case Preset::rosenbluth: return {24, 1.0, 0.1, 50.0, Scheme::steady, 32};
        case Preset::two_gaussians: return {32, 2.75, 0.005, 5.0, Scheme::steady, 32};
        case Preset::custom: return {0, 0.0, 0.0, 0.0, Scheme::plain, 0};
    }
    throw ConfigError("unknown preset");
}

ResolvedConfig resolve(const ExperimentConfig& config, std::ostream& log) {
    ResolvedConfig r;
    r.source = config;
    const PresetDefaults d = preset_defaults(config.preset);

    if (config.preset == Preset::custom) {
        if (!config.ic_file) throw ConfigError("custom preset requires --ic-file");
        const auto dump = read_field_dump(*config.ic_file);
        r.n = dump.field.grid.n();
        r.R = dump.field.grid.R();
        if ((config.n && *config.n != r.n) || (config.R && *config.R != r.R)) {
            throw ConfigError("n and R of a custom run are fixed by the initial-condition file");
        }
        if (!config.dt || !config.t_final) {
            throw ConfigError("custom preset requires --dt and --t-final");
        }
        r.dt = *config.dt;
        r.t_final = *config.t_final;
        r.scheme = config.scheme.value_or(Scheme::plain);
    } else {
        r.n = config.n.value_or(d.n);
        r.R = config.R.value_or(d.R);
        r.t_final = config.t_final.value_or(d.t_final);
        r.scheme = config.scheme.value_or(d.scheme);
        if (config.dt) {
            r.dt = *config.dt;
        } else {
            r.dt = d.dt;
            if (config.rescale_dt && r.n > d.n_ref) {
                const double ratio = static_cast<double>(d.n_ref) / r.n;
                r.dt = d.dt * ratio * ratio;
                log << "dt rescaled to " << r.dt << " for n=" << r.n << " (stable at n="
                    << d.n_ref << " with dt=" << d.dt << ")\n";
            }
        }
        const double bound = d.dt * d.n_ref * d.n_ref;
        if (r.dt * r.n * r.n > bound * (1.0 + 1e-9)) {
            log << "warning: dt*n^2 = " << r.dt * r.n * r.n << " exceeds the empirically stable "
                << bound << " for this preset\n";
        }
    }
    // Validate the grid and stepper now so errors surface before any work.
    (void)VelocityGrid(r.n, r.R);
    validate(StepperConfig{r.dt, r.t_final, r.scheme});
    if (config.diag_every < 1) throw ConfigError("diag-every must be >= 1");
    if (config.dump_every < 0) throw ConfigError("dump-every must be >= 0");
    r.kernel_fine = config.kernel_fine.value_or(default_kernel_fine(r.n));
    return r;
}

InitialState build_initial_condition(const ExperimentConfig& config, const VelocityGrid& grid) {
    switch (config.preset) {
        case Preset::maxwellian_accuracy: return {maxwellian_field(1.0, {0, 0, 0}, 1.0, grid), 0.0};
        case Preset::rosenbluth: return {rosenbluth_field(grid), 0.0};
        case Preset::two_gaussians: return {two_gaussian_field(grid), 0.0};
        case Preset::custom: {
            if (!config.ic_file) throw ConfigError("custom preset requires --ic-file");
            auto dump = read_field_dump(*config.ic_file);
            if (!(dump.field.grid == grid)) {
                throw GridMismatchError("initial-condition file does not match the run grid");
            }
            return {std::move(dump.field), dump.t};
        }
    }
    throw ConfigError("unknown preset");
}

const std::vector<std::string>& diagnostics_columns() {
    static const std::vector<std::string> columns = {
        "t",   "rho", "ux",  "uy",  "uz", "temp",    "Pxx",         "Pxy",          "Pxz",
        "Pyy", "Pyz", "Pzz", "m4",  "entropy", "rel_entropy", "nonpos_count", "mass_drift",
        "l1_err", "l2_err", "linf_err"};
    return columns;
}

void apply_thread_limit_from_env() {
    if (const char* env = std::getenv("LANDAU_THREADS")) {
        const int threads = std::atoi(env);
        if (threads > 0) omp_set_num_threads(threads);
    }
}

RunResult run(const ExperimentConfig& config, std::ostream& log) {
    apply_thread_limit_from_env();
    const ResolvedConfig rc = resolve(config, log);
    const VelocityGrid grid(rc.n, rc.R);
    std::filesystem::create_directories(config.out_dir);

    auto kernel = std::make_shared<const KernelTable>(
        load_or_compute_kernel(grid, rc.kernel_fine, config.kernel_cache));
    CollisionWorkspace ws(grid, kernel);

    InitialState init = build_initial_condition(config, grid);
    DistributionField f = std::move(init.field);
    const double t0 = init.t0;

    Equilibrium eq{1.0, {0.0, 0.0, 0.0}, 1.0};
    if (config.equilibrium_from) {
        eq = read_equilibrium(*config.equilibrium_from);
    } else if (config.preset != Preset::maxwellian_accuracy) {
        const MomentSet m0 = moments(f);
        eq = Equilibrium{m0.rho, m0.u, m0.temp};
    }
    const DistributionField equilibrium = maxwellian_field(eq.rho, eq.u, eq.temp, grid);

    std::optional<DistributionField> reference;
    double reference_t = 0.0;
    if (config.preset == Preset::maxwellian_accuracy) {
        reference = equilibrium;
    } else if (config.reference) {
        auto dump = read_field_dump(*config.reference);
        reference = restrict_reference(dump.field, grid);
        reference_t = dump.t;
    }

    std::unique_ptr<SteadyStateOperator> steady;
    if (rc.scheme == Scheme::steady) steady = std::make_unique<SteadyStateOperator>(equilibrium, ws);
    const RhsFunction rhs = [&](std::span<const double> values) {
        return steady ? (*steady)(values) : collision_operator(values, ws);
    };

    const long steps = std::max(1L, std::lround((rc.t_final - t0) / rc.dt));
    if (std::abs(t0 + steps * rc.dt - rc.t_final) > 1e-9 * std::max(1.0, rc.t_final)) {
        log << "note: final time rounded to " << t0 + steps * rc.dt << " (" << steps
            << " steps of " << rc.dt << ")\n";
    }

    {
        nlohmann::json manifest = {
            {"preset", to_string(config.preset)},
            {"n", rc.n},
            {"R", rc.R},
            {"T", grid.T()},
            {"dt", rc.dt},
            {"t0", t0},
            {"t_final", rc.t_final},
            {"steps", steps},
            {"scheme", to_string(rc.scheme)},
            {"diag_every", config.diag_every},
            {"dump_every", config.dump_every},
            {"kernel_fine", rc.kernel_fine},
            {"kernel_imag_ratio", kernel->imag_ratio()},
            {"clip_negative", config.clip_negative},
            {"equilibrium", {{"rho", eq.rho}, {"u", {eq.u[0], eq.u[1], eq.u[2]}}, {"temp", eq.temp}}},
        };
        if (config.kernel_cache) manifest["kernel_cache"] = config.kernel_cache->string();
        if (config.ic_file) manifest["ic_file"] = config.ic_file->string();
        if (config.reference) manifest["reference"] = config.reference->string();
        std::ofstream(config.out_dir / "run.json") << manifest.dump(2) << '\n';
    }

    std::ofstream csv(config.out_dir / "diagnostics.csv");
    if (!csv) throw ConfigError("cannot write into " + config.out_dir.string());
    csv << std::setprecision(17);
    const auto& columns = diagnostics_columns();
    for (std::size_t c = 0; c < columns.size(); ++c) csv << (c ? "," : "") << columns[c];
    csv << '\n';

    RunResult result;
    const double rho0 = moments(f).rho;
    auto record = [&](double t) {
        MomentSet m = measure(f, equilibrium, t);
        const double drift = std::abs(m.rho - rho0) / rho0;
        std::optional<ErrorNorms> err;
        if (config.preset == Preset::maxwellian_accuracy) {
            err = error_norms(f, *reference);
        } else if (reference && std::abs(t - reference_t) <= 0.5 * rc.dt) {
            err = error_norms(f, *reference);
        }
        write_row(csv, m, drift, err);
        csv.flush();
        result.rows.push_back(m);
    };

    record(t0);
    for (long step = 1; step <= steps; ++step) {
        const double t_prev = t0 + (step - 1) * rc.dt;
        try {
            f.values = rk3_step(f.values, rhs, rc.dt, t_prev);
        } catch (const BlowUpError& e) {
            result.exit_status = kBlowUpStatus;
            result.message = e.what();
            result.steps = step - 1;
            result.t = t_prev;
            log << "blow-up: " << e.what() << '\n';
            return result;
        }
        if (config.clip_negative) clip_and_renormalize(f.values);
        const double t = t0 + step * rc.dt;
        if (step % config.diag_every == 0 || step == steps) {
            try {
                record(t);
            } catch (const DegenerateStateError& e) {
                // finite but unphysical: the same breakdown as a non-finite stage
                result.exit_status = kBlowUpStatus;
                result.message = std::string(e.what()) + " at t=" + std::to_string(t);
                result.steps = step - 1;
                result.t = t_prev;
                log << "blow-up: " << result.message << '\n';
                return result;
            }
        }
        if (config.dump_every > 0 && step % config.dump_every == 0) {
            write_field_dump(f, t, config.out_dir / step_name(step));
        }
    }
    result.steps = steps;
    result.t = t0 + steps * rc.dt;
    write_field_dump(f, result.t, config.out_dir / "field_final.lspf");
    return result;
}

}  // namespace landau
