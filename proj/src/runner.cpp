#include "dqml/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dqml/csv.hpp"
#include "dqml/linalg.hpp"
#include "dqml/version.hpp"

namespace dqml {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Artifact {
    std::string name;
    std::string content;
};

std::string format_gamma(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", g);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DensityOperator preset_state(const std::string& name) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (name == "mixed")
        return DensityOperator::maximally_mixed(4);
    if (name == "singlet")
        return DensityOperator::from_pure(PureState::normalized(
            {0.0, inv_sqrt2, -inv_sqrt2, 0.0}));
    if (name == "triplet0")
        return DensityOperator::from_pure(PureState::normalized(
            {0.0, inv_sqrt2, inv_sqrt2, 0.0}));
    const std::size_t idx = (name[0] - '0') * 2 + (name[1] - '0');
    return DensityOperator::from_pure(PureState::basis_state(4, idx));
}

void run_qrl_sweep(const QrlSweepSpec& spec, std::uint64_t master_seed,
                   unsigned threads, std::vector<Artifact>& out) {
    QrlParams base = spec.base;
    base.master_seed = master_seed;
    const EnvBasis basis = EnvBasis::from_angles(spec.basis_polar, spec.basis_azimuth);
    const auto rows = sweep_tau(base, spec.tau_grid, spec.configs, threads, basis);

    csv::Writer w({"tau_tilde", "gamma0_tilde", "T_tilde", "F_a", "F_a_stderr",
                   "W_a", "W_a_stderr"});
    for (const SweepRow& r : rows)
        w.add_row({w.cell(r.tau_tilde), w.cell(r.gamma0_tilde), w.cell(r.T_tilde),
                   w.cell(r.f_a), w.cell(r.f_a_stderr), w.cell(r.w_a),
                   w.cell(r.w_a_stderr)});
    out.push_back({"qrl_sweep.csv", w.str()});
}

void run_qrl_iterations(const QrlIterationsSpec& spec, std::uint64_t master_seed,
                        unsigned threads, std::vector<Artifact>& out) {
    const EnvBasis basis = EnvBasis::from_angles(spec.basis_polar, spec.basis_azimuth);
    for (std::size_t idx = 0; idx < spec.gamma0_values.size(); ++idx) {
        QrlParams params = spec.base;
        params.gamma0_tilde = spec.gamma0_values[idx];
        params.master_seed = derive_stream_seed(master_seed, 811 + idx);
        const QrlAggregate agg = run_ensemble(params, threads, basis);

        csv::Writer w({"k", "W_k", "F_k", "F_minus_k", "F_plus_k"});
        for (std::size_t k = 0; k < params.n_iterations; ++k)
            w.add_row({std::to_string(k + 1), w.cell(agg.w_mean[k]),
                       w.cell(agg.f_mean[k]), w.cell(agg.f_minus_mean[k]),
                       w.cell(agg.f_plus_mean[k])});
        out.push_back({"qrl_iterations_gamma" +
                           format_gamma(spec.gamma0_values[idx]) + ".csv",
                       w.str()});
    }
}

void run_lindblad_steady(const LindbladSteadySpec& spec,
                         std::vector<Artifact>& out) {
    const LindbladModel model = spec.reservoir.model();
    const Liouvillian liou = build_liouvillian(model);
    const auto schur = linalg::schur_kernel_first(liou.matrix, 1e-10);

    csv::Writer spectrum({"re", "im"});
    for (const cplx& v : schur.values)
        spectrum.add_row({spectrum.cell(v.real()), spectrum.cell(v.imag())});
    out.push_back({"liouvillian_spectrum.csv", spectrum.str()});

    const SteadyStateMap map = SteadyStateMap::build(model);
    const ComplexMatrix& p = map.matrix();
    const double idem = (p * p - p).max_abs();
    const double choi_min = map.choi_min_eigenvalue();
    const bool cp = choi_min >= -1e-8;

    json info;
    info["kernel_dim"] = map.kernel_dim();
    info["spectral_gap"] = map.spectral_gap();
    info["idempotency_residual"] = idem;
    info["choi_min_eigenvalue"] = choi_min;
    info["completely_positive"] = cp;
    if (auto kraus = map.kraus_form(1e-8))
        info["kraus_rank"] = kraus->kraus_ops.size();
    out.push_back({"steady_map.json", info.dump(2) + "\n"});

    csv::Writer states({"initial_state", "row", "col", "re", "im"});
    for (const std::string& name : spec.initial_states) {
        const DensityOperator rho = map.apply(preset_state(name));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                states.add_row({name, std::to_string(i), std::to_string(j),
                                states.cell(rho.matrix()(i, j).real()),
                                states.cell(rho.matrix()(i, j).imag())});
    }
    out.push_back({"steady_states.csv", states.str()});
}

void run_classify(ClassifySpec& spec, std::uint64_t master_seed,
                  std::vector<Artifact>& out) {
    if (!spec.data_seed)
        spec.data_seed = derive_stream_seed(master_seed, 101);
    if (!spec.split_seed)
        spec.split_seed = derive_stream_seed(master_seed, 102);

    std::vector<Record> records =
        spec.dataset_csv.empty()
            ? synthetic_records(spec.n_records, spec.data_seed)
            : records_from_csv(read_file(spec.dataset_csv));
    const DatasetSplit split =
        split_dataset(records.size(), spec.train_fraction, spec.split_seed);

    std::vector<Record> train;
    for (std::size_t i : split.train) {
        require(records[i].label.has_value(),
                "classify: training rows must carry labels");
        train.push_back(records[i]);
    }
    const std::vector<ReservoirSpec> grid =
        spec.reservoir_kind == ReservoirSpec::Kind::Thermal
            ? default_thermal_grid(spec.gamma)
            : default_squeezed_grid(spec.gamma);
    const ClassifierModel model = fit(train, grid);

    csv::Writer preds({"index", "f1", "f2", "f3", "f4", "label", "predicted", "split"});
    std::size_t hits_train = 0, hits_test = 0, labeled_test = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const bool in_train =
            std::find(split.train.begin(), split.train.end(), i) != split.train.end();
        const int pred = predict(model, records[i]);
        if (records[i].label) {
            if (in_train)
                hits_train += pred == *records[i].label;
            else {
                hits_test += pred == *records[i].label;
                ++labeled_test;
            }
        }
        preds.add_row({std::to_string(i), preds.cell(records[i].features[0]),
                       preds.cell(records[i].features[1]),
                       preds.cell(records[i].features[2]),
                       preds.cell(records[i].features[3]),
                       records[i].label ? std::to_string(*records[i].label) : "",
                       std::to_string(pred), in_train ? "train" : "test"});
    }
    out.push_back({"predictions.csv", preds.str()});

    json mj;
    mj["n_train"] = split.train.size();
    mj["n_test"] = split.test.size();
    mj["train_accuracy"] =
        static_cast<double>(hits_train) / static_cast<double>(split.train.size());
    if (labeled_test)
        mj["test_accuracy"] =
            static_cast<double>(hits_test) / static_cast<double>(labeled_test);
    out.push_back({"metrics.json", mj.dump(2) + "\n"});

    json model_json;
    if (model.reservoir.kind == ReservoirSpec::Kind::Thermal) {
        model_json["reservoir"] = {{"type", "thermal"},
                                   {"n_bar", model.reservoir.n_bar},
                                   {"Gamma", model.reservoir.gamma}};
    } else {
        model_json["reservoir"] = {{"type", "squeezed"},
                                   {"r", model.reservoir.r},
                                   {"psi", model.reservoir.psi},
                                   {"Gamma", model.reservoir.gamma}};
    }
    model_json["weights"] = model.weights;
    model_json["bias"] = model.bias;
    model_json["threshold"] = model.threshold;
    out.push_back({"model.json", model_json.dump(2) + "\n"});
}

void run_qrc(QrcSpec& spec, std::uint64_t master_seed,
             std::vector<Artifact>& out) {
    if (!spec.reservoir.circuit_seed)
        spec.reservoir.circuit_seed = derive_stream_seed(master_seed, 201);
    if (!spec.data_seed)
        spec.data_seed = derive_stream_seed(master_seed, 202);
    if (!spec.split_seed)
        spec.split_seed = derive_stream_seed(master_seed, 203);

    const RegressionDataset ds =
        spec.dataset_csv.empty()
            ? synthetic_dataset(spec.reservoir.n_qubits, spec.n_samples,
                                spec.data_seed)
            : dataset_from_csv(read_file(spec.dataset_csv));
    const auto rows =
        run_experiment(ds, spec.reservoir, spec.grid, spec.lambda, spec.split_seed);

    csv::Writer w({"noise_kind", "p", "mse_train", "mse_test"});
    for (const MetricsRow& r : rows)
        w.add_row({to_string(r.kind), w.cell(r.p), w.cell(r.mse_train),
                   w.cell(r.mse_test)});
    out.push_back({"qrc_metrics.csv", w.str()});
}

}  // namespace

void run(ExperimentConfig cfg, const RunOptions& opts) {
    if (!opts.output_dir_override.empty())
        cfg.output_dir = opts.output_dir_override;
    if (opts.seed_override)
        cfg.master_seed = *opts.seed_override;
    require(!cfg.output_dir.empty(),
            "no output directory: set output_dir in the config or pass --out");

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Artifact> artifacts;
    if (auto* s = std::get_if<QrlSweepSpec>(&cfg.params))
        run_qrl_sweep(*s, cfg.master_seed, opts.n_threads, artifacts);
    else if (auto* s = std::get_if<QrlIterationsSpec>(&cfg.params))
        run_qrl_iterations(*s, cfg.master_seed, opts.n_threads, artifacts);
    else if (auto* s = std::get_if<LindbladSteadySpec>(&cfg.params))
        run_lindblad_steady(*s, artifacts);
    else if (auto* s = std::get_if<ClassifySpec>(&cfg.params))
        run_classify(*s, cfg.master_seed, artifacts);
    else if (auto* s = std::get_if<QrcSpec>(&cfg.params))
        run_qrc(*s, cfg.master_seed, artifacts);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // Manifest: resolved config (seeds filled in), version, timing.
    json manifest;
    manifest["config"] = json::parse(config_to_json(cfg));
    manifest["library_version"] = kLibraryVersion;
    manifest["wall_clock_seconds"] = elapsed;
    {
        char stamp[32];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        manifest["finished_utc"] = stamp;
    }
    json names = json::array();
    for (const Artifact& a : artifacts)
        names.push_back(a.name);
    manifest["written_files"] = names;
    artifacts.push_back({"manifest.json", manifest.dump(2) + "\n"});

    // All results exist in memory; write everything or nothing.
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    require(!ec, "cannot create output directory '" + cfg.output_dir + "'");
    std::vector<fs::path> written;
    try {
        for (const Artifact& a : artifacts) {
            const fs::path path = fs::path(cfg.output_dir) / a.name;
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            f << a.content;
            f.flush();
            require(f.good(), "failed writing '" + path.string() + "'");
            written.push_back(path);
        }
    } catch (...) {
        for (const fs::path& p : written)
            fs::remove(p, ec);
        throw;
    }
}

}  // namespace dqml
