#include "dqml/qrc.hpp"

#include <algorithm>
#include <cmath>

#include "dqml/kernels.hpp"
#include "dqml/linalg.hpp"
#include "dqml/csv.hpp"
#include "dqml/rng.hpp"

namespace dqml {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ComplexMatrix rotation_gate(Gate::Kind kind, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    switch (kind) {
        case Gate::Kind::RotX:
            return {{cplx{c, 0.0}, cplx{0.0, -s}}, {cplx{0.0, -s}, cplx{c, 0.0}}};
        case Gate::Kind::RotY:
            return {{cplx{c, 0.0}, cplx{-s, 0.0}}, {cplx{s, 0.0}, cplx{c, 0.0}}};
        default:
            return {{std::polar(1.0, -0.5 * angle), cplx{0.0, 0.0}},
                    {cplx{0.0, 0.0}, std::polar(1.0, 0.5 * angle)}};
    }
}

const ComplexMatrix& cnot_gate() {
    static const ComplexMatrix c{{1.0, 0.0, 0.0, 0.0},
                                 {0.0, 1.0, 0.0, 0.0},
                                 {0.0, 0.0, 0.0, 1.0},
                                 {0.0, 0.0, 1.0, 0.0}};
    return c;
}

// One-qubit channel lifted to the doubled (row, column) index space.
ComplexMatrix doubled_channel(const KrausChannel& ch) {
    ComplexMatrix m(4, 4);
    for (const ComplexMatrix& k : ch.kraus_ops)
        m += kron(k, k.conjugate());
    return m;
}

}  // namespace

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "none")
        return NoiseKind::None;
    if (name == "amplitude_damping")
        return NoiseKind::AmplitudeDamping;
    if (name == "phase_damping")
        return NoiseKind::PhaseDamping;
    if (name == "depolarizing")
        return NoiseKind::Depolarizing;
    throw Error("unknown noise kind '" + name + "'");
}

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::None: return "none";
        case NoiseKind::AmplitudeDamping: return "amplitude_damping";
        case NoiseKind::PhaseDamping: return "phase_damping";
        default: return "depolarizing";
    }
}

void ReservoirConfig::validate() const {
    require(n_qubits >= 2 && n_qubits <= 8,
            "ReservoirConfig: n_qubits must lie in [2,8]");
    require(error_probability >= 0.0 && error_probability <= 1.0,
            "ReservoirConfig: error_probability must lie in [0,1]");
}

std::vector<Gate> build_random_circuit(const ReservoirConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.circuit_seed);
    const unsigned n = cfg.n_qubits;
    std::vector<Gate> gates;
    gates.reserve(cfg.gate_count());
    for (std::size_t g = 0; g < cfg.gate_count(); ++g) {
        if (rng.uniform() < 0.4) {
            const unsigned control = static_cast<unsigned>(rng.uniform_index(n));
            const unsigned skip = static_cast<unsigned>(rng.uniform_index(n - 1));
            const unsigned target = (control + 1 + skip) % n;
            gates.push_back({Gate::Kind::Cnot, target, control, 0.0});
        } else {
            static const Gate::Kind axes[3] = {Gate::Kind::RotX, Gate::Kind::RotY,
                                               Gate::Kind::RotZ};
            const Gate::Kind kind = axes[rng.uniform_index(3)];
            const unsigned qubit = static_cast<unsigned>(rng.uniform_index(n));
            const double angle = rng.uniform(0.0, kTwoPi);
            gates.push_back({kind, qubit, 0, angle});
        }
    }
    return gates;
}

FeatureVector extract_features(const std::vector<Gate>& circuit,
                               const ReservoirConfig& cfg,
                               const DensityOperator& rho_in) {
    cfg.validate();
    const unsigned n = cfg.n_qubits;
    const std::size_t d = std::size_t{1} << n;
    require(rho_in.dim() == d, "extract_features: state dimension mismatch");
    const unsigned total_bits = 2 * n;
    const auto& kernels = kern::active();

    std::vector<cplx> flat(rho_in.matrix().data(),
                           rho_in.matrix().data() + d * d);

    const bool noisy = cfg.noise_kind != NoiseKind::None;
    ComplexMatrix noise4;
    if (noisy)
        noise4 = doubled_channel(
            make_channel(to_string(cfg.noise_kind), cfg.error_probability));

    for (const Gate& g : circuit) {
        if (g.kind == Gate::Kind::Cnot) {
            kernels.apply_2q(flat.data(), total_bits, g.control, g.qubit,
                             cnot_gate().data());
            kernels.apply_2q(flat.data(), total_bits, n + g.control, n + g.qubit,
                             cnot_gate().data());
            if (noisy) {
                kernels.apply_2q(flat.data(), total_bits, g.control,
                                 n + g.control, noise4.data());
                kernels.apply_2q(flat.data(), total_bits, g.qubit, n + g.qubit,
                                 noise4.data());
            }
        } else {
            const ComplexMatrix u = rotation_gate(g.kind, g.angle);
            const ComplexMatrix uc = u.conjugate();
            kernels.apply_1q(flat.data(), total_bits, g.qubit, u.data());
            kernels.apply_1q(flat.data(), total_bits, n + g.qubit, uc.data());
            if (noisy)
                kernels.apply_2q(flat.data(), total_bits, g.qubit, n + g.qubit,
                                 noise4.data());
        }
    }

    FeatureVector out;
    out.values.reserve(2 * n);
    for (unsigned q = 0; q < n; ++q) {
        const std::size_t mask = d >> (q + 1);
        double x = 0.0, z = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            x += flat[(i ^ mask) * d + i].real();
            z += (i & mask) ? -flat[i * d + i].real() : flat[i * d + i].real();
        }
        out.values.push_back(x);
        out.values.push_back(z);
    }
    return out;
}

RidgeModel ridge_fit(const std::vector<std::vector<double>>& x,
                     const std::vector<double>& y, double lambda) {
    const std::size_t n = x.size();
    require(n >= 1 && y.size() == n, "ridge_fit: shape mismatch");
    require(lambda >= 0.0 && std::isfinite(lambda),
            "ridge_fit: lambda must be finite and >= 0");
    const std::size_t dfeat = x[0].size();
    for (const auto& row : x)
        require(row.size() == dfeat, "ridge_fit: ragged feature matrix");

    std::vector<double> mu(dfeat, 0.0), sigma(dfeat, 0.0);
    double ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ybar += y[i];
        for (std::size_t j = 0; j < dfeat; ++j)
            mu[j] += x[i][j];
    }
    ybar /= static_cast<double>(n);
    for (double& m : mu)
        m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dfeat; ++j) {
            const double dvi = x[i][j] - mu[j];
            sigma[j] += dvi * dvi;
        }
    for (double& s : sigma) {
        s = std::sqrt(s / static_cast<double>(n));
        if (s == 0.0)
            s = 1.0;  // constant column: ends up with zero weight
    }

    // Gram system on standardized columns; bias is not regularized.
    std::vector<double> gram(dfeat * dfeat, 0.0), rhs(dfeat, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double yc = y[i] - ybar;
        for (std::size_t j = 0; j < dfeat; ++j) {
            const double xj = (x[i][j] - mu[j]) / sigma[j];
            rhs[j] += xj * yc;
            for (std::size_t k = j; k < dfeat; ++k)
                gram[j * dfeat + k] += xj * (x[i][k] - mu[k]) / sigma[k];
        }
    }
    for (std::size_t j = 0; j < dfeat; ++j) {
        gram[j * dfeat + j] += lambda;
        for (std::size_t k = 0; k < j; ++k)
            gram[j * dfeat + k] = gram[k * dfeat + j];
    }

    std::vector<double> w;
    try {
        w = linalg::solve_spd(gram, dfeat, rhs);
    } catch (const Error&) {
        throw Error(lambda == 0.0
                        ? "ridge_fit: singular system at lambda = 0"
                        : "ridge_fit: Gram solve failed");
    }

    RidgeModel model;
    model.lambda = lambda;
    model.weights.resize(dfeat);
    model.bias = ybar;
    for (std::size_t j = 0; j < dfeat; ++j) {
        model.weights[j] = w[j] / sigma[j];
        model.bias -= model.weights[j] * mu[j];
    }
    return model;
}

double ridge_predict(const RidgeModel& model, const std::vector<double>& x) {
    require(x.size() == model.weights.size(), "ridge_predict: dimension mismatch");
    double s = model.bias;
    for (std::size_t j = 0; j < x.size(); ++j)
        s += model.weights[j] * x[j];
    return s;
}

RegressionDataset synthetic_dataset(unsigned n_qubits, std::size_t n_samples,
                                    std::uint64_t data_seed) {
    require(n_qubits >= 1 && n_qubits <= 8, "synthetic_dataset: bad n_qubits");
    require(n_samples >= 1, "synthetic_dataset: need at least one sample");
    Rng rng(data_seed);

    struct AngleCoef {
        double a, b, c, d, e;
    };
    std::vector<AngleCoef> coef(n_qubits);
    for (AngleCoef& ac : coef) {
        ac.a = rng.uniform(0.0, 0.5 * kTwoPi);
        ac.b = rng.uniform(-0.25 * kTwoPi, 0.25 * kTwoPi);
        ac.c = rng.uniform(0.0, 0.125 * kTwoPi);
        ac.d = rng.uniform(1.0, 6.0);
        ac.e = rng.uniform(0.0, kTwoPi);
    }
    struct TargetCoef {
        double alpha, beta, gamma;
    };
    std::vector<TargetCoef> tc(3);
    for (TargetCoef& t : tc) {
        t.alpha = rng.uniform(-1.0, 1.0);
        t.beta = rng.uniform(1.0, 8.0);
        t.gamma = rng.uniform(0.0, kTwoPi);
    }

    RegressionDataset ds;
    ds.n_qubits = n_qubits;
    ds.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double r = n_samples == 1
                             ? 0.5
                             : static_cast<double>(i) / static_cast<double>(n_samples - 1);
        std::vector<cplx> amps{cplx{1.0, 0.0}};
        for (unsigned q = 0; q < n_qubits; ++q) {
            const AngleCoef& ac = coef[q];
            const double theta = ac.a + ac.b * r + ac.c * std::sin(ac.d * r + ac.e);
            std::vector<cplx> next(amps.size() * 2);
            const double c0 = std::cos(theta), s0 = std::sin(theta);
            for (std::size_t k = 0; k < amps.size(); ++k) {
                next[2 * k] = c0 * amps[k];
                next[2 * k + 1] = s0 * amps[k];
            }
            amps = std::move(next);
        }
        double target = 0.5 * r * r;
        for (const TargetCoef& t : tc)
            target += t.alpha * std::sin(t.beta * r + t.gamma);
        ds.samples.push_back({PureState::normalized(std::move(amps)), target, r});
    }
    return ds;
}

RegressionDataset dataset_from_csv(const std::string& text) {
    const csv::Table t = csv::read_csv(text, false);
    require(!t.rows.empty(), "dataset csv: no rows");
    RegressionDataset ds;
    for (const auto& row : t.rows) {
        require(row.size() >= 4 && (row.size() - 2) % 2 == 0,
                "dataset csv: rows must be R,target,re/im amplitude pairs");
        const std::size_t n_amp = (row.size() - 2) / 2;
        require((n_amp & (n_amp - 1)) == 0,
                "dataset csv: amplitude count must be a power of two");
        const unsigned n_qubits =
            static_cast<unsigned>(std::round(std::log2(double(n_amp))));
        if (ds.n_qubits == 0)
            ds.n_qubits = n_qubits;
        require(ds.n_qubits == n_qubits, "dataset csv: inconsistent row widths");
        std::vector<cplx> amps(n_amp);
        for (std::size_t k = 0; k < n_amp; ++k)
            amps[k] = cplx{std::stod(row[2 + 2 * k]), std::stod(row[3 + 2 * k])};
        ds.samples.push_back({PureState::normalized(std::move(amps)),
                              std::stod(row[1]), std::stod(row[0])});
    }
    return ds;
}

std::vector<MetricsRow> run_experiment(const RegressionDataset& ds,
                                       const ReservoirConfig& base,
                                       const std::vector<NoiseCell>& grid,
                                       double lambda, std::uint64_t split_seed) {
    const std::size_t n = ds.samples.size();
    require(n >= 10, "run_experiment: dataset size must be >= 10");
    base.validate();
    require(ds.n_qubits == base.n_qubits,
            "run_experiment: dataset qubit count differs from config");

    const std::vector<Gate> circuit = build_random_circuit(base);

    // Seeded shuffle; 30% (rounded) of the samples test.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    Rng rng(split_seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
    const std::size_t n_test =
        static_cast<std::size_t>(std::floor(0.3 * static_cast<double>(n) + 0.5));
    const std::size_t n_train = n - n_test;
    require(n_train >= 1 && n_test >= 1, "run_experiment: degenerate split");

    std::vector<MetricsRow> rows;
    rows.reserve(grid.size());
    for (const NoiseCell& cell : grid) {
        ReservoirConfig cfg = base;
        cfg.noise_kind = cell.kind;
        cfg.error_probability = cell.p;

        std::vector<std::vector<double>> feats(n);
        for (std::size_t i = 0; i < n; ++i)
            feats[i] = extract_features(
                           circuit, cfg,
                           DensityOperator::from_pure(ds.samples[i].input_state))
                           .values;

        std::vector<std::vector<double>> x_train;
        std::vector<double> y_train;
        x_train.reserve(n_train);
        for (std::size_t i = 0; i < n_train; ++i) {
            x_train.push_back(feats[idx[i]]);
            y_train.push_back(ds.samples[idx[i]].target);
        }
        const RidgeModel model = ridge_fit(x_train, y_train, lambda);

        double mse_train = 0.0, mse_test = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double err =
                ridge_predict(model, feats[idx[i]]) - ds.samples[idx[i]].target;
            if (i < n_train)
                mse_train += err * err;
            else
                mse_test += err * err;
        }
        mse_train /= static_cast<double>(n_train);
        mse_test /= static_cast<double>(n_test);
        rows.push_back({cell.kind, cell.p, mse_train, mse_test});
    }
    return rows;
}

}  // namespace dqml
