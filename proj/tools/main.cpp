#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dqml/runner.hpp"
#include "dqml/version.hpp"

namespace {

constexpr const char* kConfigReference = R"(Config reference (JSON):
  {"experiment": <name>, "output_dir": <dir>, "master_seed": <u64>, "params": {...}}

  qrl_sweep params (defaults): reward_rate 0.9, punishment_rate 20/9,
    n_realizations 1000, n_iterations 500, basis_polar 1.0, basis_azimuth 0.5,
    initial_state [1,0,0,0], tau_max 2*pi, tau_points 25,
    tau_min tau_max/tau_points, configs [{gamma0_tilde,T_tilde}] defaulting to
    {0,0}, {0.5,0.01}, {0.5,1}.
  qrl_iterations params: the qrl_sweep scalars plus T_tilde 0.3, tau_tilde 1.0,
    gamma0_values [0, 0.5, 1].
  lindblad_steady params: reservoir {type thermal|squeezed, n_bar | r,psi,
    Gamma 1.0}, initial_states from {00,01,10,11,singlet,triplet0,mixed}.
  classify params: reservoir_type thermal|squeezed, Gamma 1.0, n_records 40,
    train_fraction 0.7, data_seed/split_seed (derived from master_seed when
    omitted), dataset_csv (optional path, header f1,f2,f3,f4,label).
  qrc params: n_qubits 4, n_gates 0 (meaning 10*n_qubits), lambda 1e-6,
    n_samples 60, noise_kinds [none, amplitude_damping, phase_damping,
    depolarizing], error_probabilities [0.001, 0.005, 0.01, 0.05],
    circuit_seed/data_seed/split_seed (derived when omitted), dataset_csv
    (optional; rows R,target,re/im amplitude pairs).

Exit codes: 0 success, 2 config error, 3 runtime error.
DQML_THREADS sets the worker count when --threads is absent.)";

std::string read_file_or_exit(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        std::cerr << "error: cannot read config file '" << path << "'\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative-qml: open-system quantum machine learning experiments"};
    app.set_version_flag("--version", dqml::kLibraryVersion);
    app.footer(kConfigReference);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;

    CLI::App* run_cmd = app.add_subcommand("run", "execute an experiment config");
    run_cmd->add_option("config", config_path, "JSON config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (overrides config)");
    run_cmd->add_option("--seed", seed, "master seed (overrides config)")
        ->each([&](const std::string&) { seed_set = true; });
    run_cmd->add_option("--threads", threads, "worker count (default: DQML_THREADS or all cores)");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "check a config and report every problem");
    validate_cmd->add_option("config", config_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string text = read_file_or_exit(config_path);
        if (validate_cmd->parsed()) {
            try {
                dqml::parse_config(text);
            } catch (const dqml::ConfigError& e) {
                for (const std::string& msg : e.errors())
                    std::cerr << "config error: " << msg << "\n";
                return 2;
            }
            std::cout << "ok\n";
            return 0;
        }

        dqml::ExperimentConfig cfg;
        try {
            cfg = dqml::parse_config(text);
        } catch (const dqml::ConfigError& e) {
            for (const std::string& msg : e.errors())
                std::cerr << "config error: " << msg << "\n";
            return 2;
        }
        dqml::RunOptions opts;
        opts.output_dir_override = out_dir;
        if (seed_set)
            opts.seed_override = seed;
        opts.n_threads = threads;
        dqml::run(std::move(cfg), opts);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
