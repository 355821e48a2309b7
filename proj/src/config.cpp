#include "dqml/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace dqml {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string join_errors(const std::vector<std::string>& errors) {
    std::string out = "invalid config:";
    for (const auto& e : errors)
        out += "\n  - " + e;
    return out;
}

// Tracks touched keys so unknown ones can be reported, and accumulates
// every validation failure instead of stopping at the first.
class Reader {
  public:
    Reader(const json& j, std::string scope, std::vector<std::string>& errors)
        : j_(j), scope_(std::move(scope)), errors_(errors) {}

    ~Reader() {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                errors_.push_back(scope_ + ": unknown key '" + it.key() + "'");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    double number(const std::string& key, double dflt) {
        seen_.insert(key);
        if (!j_.contains(key))
            return dflt;
        if (!j_[key].is_number()) {
            fail(key + " must be a number");
            return dflt;
        }
        return j_[key].get<double>();
    }

    std::uint64_t seed(const std::string& key, std::uint64_t dflt) {
        seen_.insert(key);
        if (!j_.contains(key))
            return dflt;
        if (!j_[key].is_number_unsigned()) {
            fail(key + " must be a nonnegative integer");
            return dflt;
        }
        return j_[key].get<std::uint64_t>();
    }

    std::size_t count(const std::string& key, std::size_t dflt,
                      std::size_t min_value = 1) {
        seen_.insert(key);
        if (!j_.contains(key))
            return dflt;
        if (!j_[key].is_number_unsigned() ||
            j_[key].get<std::uint64_t>() < min_value) {
            fail(key + " must be an integer >= " + std::to_string(min_value));
            return dflt;
        }
        return j_[key].get<std::size_t>();
    }

    std::string text(const std::string& key, const std::string& dflt) {
        seen_.insert(key);
        if (!j_.contains(key))
            return dflt;
        if (!j_[key].is_string()) {
            fail(key + " must be a string");
            return dflt;
        }
        return j_[key].get<std::string>();
    }

    const json* array(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key))
            return nullptr;
        if (!j_[key].is_array()) {
            fail(key + " must be an array");
            return nullptr;
        }
        return &j_[key];
    }

    const json* object(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key))
            return nullptr;
        if (!j_[key].is_object()) {
            fail(key + " must be an object");
            return nullptr;
        }
        return &j_[key];
    }

    void fail(const std::string& message) {
        errors_.push_back(scope_ + ": " + message);
    }

  private:
    const json& j_;
    std::string scope_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

void read_qrl_common(Reader& r, QrlParams& base, double& polar, double& azimuth,
                     std::vector<std::string>& errors, const std::string& scope) {
    base.reward_rate = r.number("reward_rate", 0.9);
    if (!(base.reward_rate > 0.0 && base.reward_rate < 1.0))
        errors.push_back(scope + ": reward_rate must lie in (0,1)");
    base.punishment_rate = r.number("punishment_rate", 20.0 / 9.0);
    if (!(base.punishment_rate > 1.0))
        errors.push_back(scope + ": punishment_rate must exceed 1");
    base.n_realizations = r.count("n_realizations", 1000);
    base.n_iterations = r.count("n_iterations", 500);
    polar = r.number("basis_polar", 1.0);
    azimuth = r.number("basis_azimuth", 0.5);
    if (const json* arr = r.array("initial_state")) {
        if (arr->size() != 4 || !std::all_of(arr->begin(), arr->end(),
                                             [](const json& v) { return v.is_number(); })) {
            errors.push_back(scope +
                             ": initial_state must be [re0, im0, re1, im1]");
        } else {
            std::vector<cplx> amps{cplx{(*arr)[0].get<double>(), (*arr)[1].get<double>()},
                                   cplx{(*arr)[2].get<double>(), (*arr)[3].get<double>()}};
            try {
                base.initial_state = PureState::normalized(std::move(amps));
            } catch (const Error& e) {
                errors.push_back(scope + ": initial_state: " + e.what());
            }
        }
    }
}

ReservoirSpec read_reservoir(const json& j, std::vector<std::string>& errors,
                             const std::string& scope) {
    Reader r(j, scope, errors);
    ReservoirSpec spec;
    const std::string type = r.text("type", "thermal");
    spec.gamma = r.number("Gamma", 1.0);
    if (spec.gamma <= 0.0)
        errors.push_back(scope + ": Gamma must be positive");
    if (type == "thermal") {
        spec.kind = ReservoirSpec::Kind::Thermal;
        spec.n_bar = r.number("n_bar", 0.0);
        if (spec.n_bar < 0.0)
            errors.push_back(scope + ": n_bar must be >= 0");
    } else if (type == "squeezed") {
        spec.kind = ReservoirSpec::Kind::Squeezed;
        spec.r = r.number("r", 0.0);
        spec.psi = r.number("psi", 0.0);
        if (spec.r < 0.0)
            errors.push_back(scope + ": r must be >= 0");
    } else {
        errors.push_back(scope + ": type must be 'thermal' or 'squeezed'");
    }
    return spec;
}

QrlSweepSpec read_qrl_sweep(const json& j, std::vector<std::string>& errors) {
    const std::string scope = "params";
    Reader r(j, scope, errors);
    QrlSweepSpec spec;
    read_qrl_common(r, spec.base, spec.basis_polar, spec.basis_azimuth, errors, scope);

    const double tau_max = r.number("tau_max", kTwoPi);
    const std::size_t points = r.count("tau_points", 25);
    const double tau_min = r.number("tau_min", tau_max / static_cast<double>(points));
    if (!(tau_min >= 0.0 && tau_max >= tau_min))
        errors.push_back(scope + ": need 0 <= tau_min <= tau_max");
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1
                             ? tau_max
                             : tau_min + (tau_max - tau_min) * static_cast<double>(i) /
                                             static_cast<double>(points - 1);
        spec.tau_grid.push_back(t);
    }

    if (const json* arr = r.array("configs")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            if (!(*arr)[i].is_object()) {
                errors.push_back(scope + ": configs entries must be objects");
                continue;
            }
            Reader cr((*arr)[i], scope + ".configs[" + std::to_string(i) + "]", errors);
            SweepConfig c{cr.number("gamma0_tilde", 0.0), cr.number("T_tilde", 0.0)};
            if (c.gamma0_tilde < 0.0 || c.T_tilde < 0.0)
                errors.push_back(scope + ": configs rates must be >= 0");
            spec.configs.push_back(c);
        }
    }
    if (spec.configs.empty())
        spec.configs = {{0.0, 0.0}, {0.5, 0.01}, {0.5, 1.0}};
    return spec;
}

QrlIterationsSpec read_qrl_iterations(const json& j,
                                      std::vector<std::string>& errors) {
    const std::string scope = "params";
    Reader r(j, scope, errors);
    QrlIterationsSpec spec;
    read_qrl_common(r, spec.base, spec.basis_polar, spec.basis_azimuth, errors, scope);
    spec.base.T_tilde = r.number("T_tilde", 0.3);
    spec.base.tau_tilde = r.number("tau_tilde", 1.0);
    if (spec.base.T_tilde < 0.0 || spec.base.tau_tilde < 0.0)
        errors.push_back(scope + ": T_tilde and tau_tilde must be >= 0");
    if (const json* arr = r.array("gamma0_values")) {
        for (const json& v : *arr) {
            if (!v.is_number() || v.get<double>() < 0.0)
                errors.push_back(scope + ": gamma0_values must be numbers >= 0");
            else
                spec.gamma0_values.push_back(v.get<double>());
        }
    }
    if (spec.gamma0_values.empty())
        spec.gamma0_values = {0.0, 0.5, 1.0};
    return spec;
}

LindbladSteadySpec read_lindblad_steady(const json& j,
                                        std::vector<std::string>& errors) {
    const std::string scope = "params";
    Reader r(j, scope, errors);
    LindbladSteadySpec spec;
    if (const json* res = r.object("reservoir"))
        spec.reservoir = read_reservoir(*res, errors, scope + ".reservoir");
    static const std::set<std::string> presets{"00",      "01",       "10",
                                               "11",      "singlet",  "triplet0",
                                               "mixed"};
    if (const json* arr = r.array("initial_states")) {
        for (const json& v : *arr) {
            if (!v.is_string() || !presets.count(v.get<std::string>()))
                errors.push_back(scope +
                                 ": initial_states entries must be one of 00, 01, "
                                 "10, 11, singlet, triplet0, mixed");
            else
                spec.initial_states.push_back(v.get<std::string>());
        }
    }
    if (spec.initial_states.empty())
        spec.initial_states = {"00", "01", "10", "11", "singlet", "triplet0", "mixed"};
    return spec;
}

ClassifySpec read_classify(const json& j, std::vector<std::string>& errors) {
    const std::string scope = "params";
    Reader r(j, scope, errors);
    ClassifySpec spec;
    const std::string type = r.text("reservoir_type", "thermal");
    if (type == "thermal")
        spec.reservoir_kind = ReservoirSpec::Kind::Thermal;
    else if (type == "squeezed")
        spec.reservoir_kind = ReservoirSpec::Kind::Squeezed;
    else
        errors.push_back(scope + ": reservoir_type must be 'thermal' or 'squeezed'");
    spec.gamma = r.number("Gamma", 1.0);
    if (spec.gamma <= 0.0)
        errors.push_back(scope + ": Gamma must be positive");
    spec.n_records = r.count("n_records", 40, 4);
    spec.train_fraction = r.number("train_fraction", 0.7);
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        errors.push_back(scope + ": train_fraction must lie in (0,1)");
    spec.data_seed = r.seed("data_seed", 0);
    spec.split_seed = r.seed("split_seed", 0);
    spec.dataset_csv = r.text("dataset_csv", "");
    return spec;
}

QrcSpec read_qrc(const json& j, std::vector<std::string>& errors) {
    const std::string scope = "params";
    Reader r(j, scope, errors);
    QrcSpec spec;
    spec.reservoir.n_qubits =
        static_cast<unsigned>(r.count("n_qubits", 4, 2));
    if (spec.reservoir.n_qubits > 8)
        errors.push_back(scope + ": n_qubits must lie in [2,8]");
    if (r.has("n_gates"))
        spec.reservoir.n_gates = r.count("n_gates", 0, 0);
    spec.reservoir.circuit_seed = r.seed("circuit_seed", 0);
    spec.data_seed = r.seed("data_seed", 0);
    spec.split_seed = r.seed("split_seed", 0);
    spec.lambda = r.number("lambda", 1e-6);
    if (spec.lambda < 0.0)
        errors.push_back(scope + ": lambda must be >= 0");
    spec.n_samples = r.count("n_samples", 60, 1);
    spec.dataset_csv = r.text("dataset_csv", "");

    std::vector<NoiseKind> kinds;
    if (const json* arr = r.array("noise_kinds")) {
        for (const json& v : *arr) {
            if (!v.is_string()) {
                errors.push_back(scope + ": noise_kinds must be strings");
                continue;
            }
            try {
                kinds.push_back(noise_kind_from_string(v.get<std::string>()));
            } catch (const Error& e) {
                errors.push_back(scope + ": " + e.what());
            }
        }
    }
    if (kinds.empty())
        kinds = {NoiseKind::None, NoiseKind::AmplitudeDamping,
                 NoiseKind::PhaseDamping, NoiseKind::Depolarizing};

    std::vector<double> ps;
    if (const json* arr = r.array("error_probabilities")) {
        for (const json& v : *arr) {
            if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0)
                errors.push_back(scope +
                                 ": error_probabilities must lie in [0,1]");
            else
                ps.push_back(v.get<double>());
        }
    }
    if (ps.empty())
        ps = {0.001, 0.005, 0.01, 0.05};

    for (NoiseKind kind : kinds) {
        if (kind == NoiseKind::None) {
            spec.grid.push_back({kind, 0.0});
            continue;
        }
        for (double p : ps)
            spec.grid.push_back({kind, p});
    }
    return spec;
}

json reservoir_to_json(const ReservoirSpec& spec) {
    json j;
    if (spec.kind == ReservoirSpec::Kind::Thermal) {
        j["type"] = "thermal";
        j["n_bar"] = spec.n_bar;
    } else {
        j["type"] = "squeezed";
        j["r"] = spec.r;
        j["psi"] = spec.psi;
    }
    j["Gamma"] = spec.gamma;
    return j;
}

void qrl_common_to_json(json& p, const QrlParams& base, double polar,
                        double azimuth) {
    p["reward_rate"] = base.reward_rate;
    p["punishment_rate"] = base.punishment_rate;
    p["n_realizations"] = base.n_realizations;
    p["n_iterations"] = base.n_iterations;
    p["basis_polar"] = polar;
    p["basis_azimuth"] = azimuth;
    p["initial_state"] = {base.initial_state[0].real(), base.initial_state[0].imag(),
                          base.initial_state[1].real(), base.initial_state[1].imag()};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : Error(join_errors(errors)), errors_(std::move(errors)) {}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!j.is_object())
        throw ConfigError({"top level must be a JSON object"});

    std::vector<std::string> errors;
    ExperimentConfig cfg;
    {
        Reader r(j, "config", errors);
        cfg.experiment = r.text("experiment", "");
        cfg.output_dir = r.text("output_dir", "");
        cfg.master_seed = r.seed("master_seed", 12345);
        const json* params = r.object("params");
        static const json empty = json::object();
        const json& pj = params ? *params : empty;
        if (cfg.experiment == "qrl_sweep")
            cfg.params = read_qrl_sweep(pj, errors);
        else if (cfg.experiment == "qrl_iterations")
            cfg.params = read_qrl_iterations(pj, errors);
        else if (cfg.experiment == "lindblad_steady")
            cfg.params = read_lindblad_steady(pj, errors);
        else if (cfg.experiment == "classify")
            cfg.params = read_classify(pj, errors);
        else if (cfg.experiment == "qrc")
            cfg.params = read_qrc(pj, errors);
        else
            errors.push_back(
                "experiment must be one of qrl_sweep, qrl_iterations, "
                "lindblad_steady, classify, qrc");
    }
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = cfg.experiment;
    if (!cfg.output_dir.empty())
        j["output_dir"] = cfg.output_dir;
    j["master_seed"] = cfg.master_seed;
    json p = json::object();
    if (const auto* s = std::get_if<QrlSweepSpec>(&cfg.params)) {
        qrl_common_to_json(p, s->base, s->basis_polar, s->basis_azimuth);
        p["tau_min"] = s->tau_grid.front();
        p["tau_max"] = s->tau_grid.back();
        p["tau_points"] = s->tau_grid.size();
        p["configs"] = json::array();
        for (const SweepConfig& c : s->configs)
            p["configs"].push_back({{"gamma0_tilde", c.gamma0_tilde},
                                    {"T_tilde", c.T_tilde}});
    } else if (const auto* s = std::get_if<QrlIterationsSpec>(&cfg.params)) {
        qrl_common_to_json(p, s->base, s->basis_polar, s->basis_azimuth);
        p["T_tilde"] = s->base.T_tilde;
        p["tau_tilde"] = s->base.tau_tilde;
        p["gamma0_values"] = s->gamma0_values;
    } else if (const auto* s = std::get_if<LindbladSteadySpec>(&cfg.params)) {
        p["reservoir"] = reservoir_to_json(s->reservoir);
        p["initial_states"] = s->initial_states;
    } else if (const auto* s = std::get_if<ClassifySpec>(&cfg.params)) {
        p["reservoir_type"] =
            s->reservoir_kind == ReservoirSpec::Kind::Thermal ? "thermal"
                                                              : "squeezed";
        p["Gamma"] = s->gamma;
        p["n_records"] = s->n_records;
        p["train_fraction"] = s->train_fraction;
        if (s->data_seed)
            p["data_seed"] = s->data_seed;
        if (s->split_seed)
            p["split_seed"] = s->split_seed;
        if (!s->dataset_csv.empty())
            p["dataset_csv"] = s->dataset_csv;
    } else if (const auto* s = std::get_if<QrcSpec>(&cfg.params)) {
        p["n_qubits"] = s->reservoir.n_qubits;
        p["n_gates"] = s->reservoir.gate_count();
        if (s->reservoir.circuit_seed)
            p["circuit_seed"] = s->reservoir.circuit_seed;
        if (s->data_seed)
            p["data_seed"] = s->data_seed;
        if (s->split_seed)
            p["split_seed"] = s->split_seed;
        p["lambda"] = s->lambda;
        p["n_samples"] = s->n_samples;
        if (!s->dataset_csv.empty())
            p["dataset_csv"] = s->dataset_csv;
        json kinds = json::array();
        json probs = json::array();
        std::vector<std::string> seen_kinds;
        std::vector<double> seen_ps;
        for (const NoiseCell& c : s->grid) {
            const std::string name = to_string(c.kind);
            if (std::find(seen_kinds.begin(), seen_kinds.end(), name) ==
                seen_kinds.end())
                seen_kinds.push_back(name);
            if (c.kind != NoiseKind::None &&
                std::find(seen_ps.begin(), seen_ps.end(), c.p) == seen_ps.end())
                seen_ps.push_back(c.p);
        }
        p["noise_kinds"] = seen_kinds;
        if (!seen_ps.empty())
            p["error_probabilities"] = seen_ps;
    }
    j["params"] = p;
    return j.dump(2);
}

}  // namespace dqml
