// Command-line front end: `landau run` integrates an experiment, `landau kernel`
// precomputes a kernel cache file.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "landau/driver.hpp"
#include "landau/errors.hpp"
#include "landau/kernel.hpp"

namespace {

template <class T>
std::optional<T> opt_if(bool set, const T& value) {
    return set ? std::optional<T>(value) : std::nullopt;
}

// CLI11 only reads config files attached to the top-level app. The run config
// is expanded into flags placed ahead of the command line, so that with
// take-last semantics the command line wins.
std::vector<std::string> expand_run_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args.front() != "run") return args;
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::vector<std::string> from_file;
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
        if (item.name == "config") continue;
        if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
            if (item.inputs[0] == "true") from_file.push_back("--" + item.name);
            continue;
        }
        from_file.push_back("--" + item.name);
        from_file.insert(from_file.end(), item.inputs.begin(), item.inputs.end());
    }
    args.insert(args.begin() + 1, from_file.begin(), from_file.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral collocation solver for the homogeneous Landau equation"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "integrate an experiment preset");
    run_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_file;
    run_cmd->add_option("--config", config_file, "flat key = value file mirroring the flags")
        ->check(CLI::ExistingFile);

    std::string preset = "maxwellian-accuracy";
    int n = 0, diag_every = 1, dump_every = 0, fine = 0;
    double R = 0, dt = 0, t_final = 0;
    std::string scheme, kernel_cache, out_dir = "landau-out", reference, ic_file, equilibrium;
    bool clip = false, no_rescale = false;

    run_cmd->add_option("--preset", preset, "maxwellian-accuracy | rosenbluth | two-gaussians | custom")
        ->check(CLI::IsMember({"maxwellian-accuracy", "rosenbluth", "two-gaussians", "custom"}));
    auto* n_opt = run_cmd->add_option("--n", n, "collocation points per axis (even, >= 4)");
    auto* R_opt = run_cmd->add_option("--R", R, "half-width of the velocity cube");
    auto* dt_opt = run_cmd->add_option("--dt", dt, "time step");
    auto* tf_opt = run_cmd->add_option("--t-final", t_final, "final time");
    auto* scheme_opt = run_cmd->add_option("--scheme", scheme, "plain | steady")
                           ->check(CLI::IsMember({"plain", "steady"}));
    run_cmd->add_option("--diag-every", diag_every, "steps between diagnostics rows");
    run_cmd->add_option("--dump-every", dump_every, "steps between field dumps (0: none)");
    auto* cache_opt = run_cmd->add_option("--kernel-cache", kernel_cache, "kernel cache file");
    auto* fine_opt = run_cmd->add_option("--kernel-fine", fine, "kernel quadrature points per axis");
    run_cmd->add_option("--out", out_dir, "output directory");
    auto* ref_opt = run_cmd->add_option("--reference", reference, "reference field dump");
    auto* ic_opt = run_cmd->add_option("--ic-file", ic_file, "initial field dump (custom preset)");
    auto* eq_opt = run_cmd->add_option("--equilibrium-from", equilibrium,
                                       "run.json whose equilibrium the steady scheme uses");
    run_cmd->add_flag("--clip", clip, "clip negative values after each step, keeping mass");
    run_cmd->add_flag("--no-dt-rescale", no_rescale, "keep the preset time step when n changes");

    auto* kernel_cmd = app.add_subcommand("kernel", "precompute a kernel cache file");
    int k_n = 0, k_fine = 0;
    double k_R = 0;
    std::string k_out;
    kernel_cmd->add_option("--n", k_n, "collocation points per axis")->required();
    kernel_cmd->add_option("--R", k_R, "half-width of the velocity cube")->required();
    auto* k_fine_opt = kernel_cmd->add_option("--fine", k_fine, "quadrature points per axis");
    kernel_cmd->add_option("--out", k_out, "output path")->required();

    std::vector<std::string> args;
    try {
        args = expand_run_config(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run_cmd) {
            landau::ExperimentConfig config;
            config.preset = landau::parse_preset(preset);
            config.n = opt_if(n_opt->count() > 0, n);
            config.R = opt_if(R_opt->count() > 0, R);
            config.dt = opt_if(dt_opt->count() > 0, dt);
            config.t_final = opt_if(tf_opt->count() > 0, t_final);
            if (scheme_opt->count() > 0) config.scheme = landau::parse_scheme(scheme);
            config.diag_every = diag_every;
            config.dump_every = dump_every;
            if (cache_opt->count() > 0) config.kernel_cache = kernel_cache;
            config.kernel_fine = opt_if(fine_opt->count() > 0, fine);
            config.out_dir = out_dir;
            if (ref_opt->count() > 0) config.reference = reference;
            if (ic_opt->count() > 0) config.ic_file = ic_file;
            if (eq_opt->count() > 0) config.equilibrium_from = equilibrium;
            config.clip_negative = clip;
            config.rescale_dt = !no_rescale;

            const auto result = landau::run(config, std::cerr);
            std::cerr << (result.exit_status == 0 ? "done: " : "aborted: ") << result.steps
                      << " steps, t=" << result.t << '\n';
            return result.exit_status;
        }
        landau::apply_thread_limit_from_env();
        const landau::VelocityGrid grid(k_n, k_R);
        const int resolution = k_fine_opt->count() > 0 ? k_fine : landau::default_kernel_fine(k_n);
        const auto table = landau::compute_kernel_table(grid, resolution);
        landau::store_kernel(table, k_out);
        std::cerr << "kernel n=" << k_n << " T=" << grid.T() << " fine=" << resolution
                  << " imag ratio " << table.imag_ratio() << " -> " << k_out << '\n';
        return 0;
    } catch (const landau::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n' << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
