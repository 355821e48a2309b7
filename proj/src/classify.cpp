#include "dqml/classify.hpp"

#include <algorithm>
#include <cmath>

#include "dqml/csv.hpp"
#include "dqml/linalg.hpp"
#include "dqml/rng.hpp"

namespace dqml {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double score(const ClassifierModel& model, const std::array<double, 16>& feats) {
    double s = model.bias;
    for (std::size_t i = 0; i < 16; ++i)
        s += model.weights[i] * feats[i];
    return s;
}

}  // namespace

void Record::validate() const {
    double sum = 0.0;
    for (double f : features) {
        require(std::isfinite(f) && f >= 0.0 && f <= 1.0,
                "Record: features must lie in [0,1]");
        sum += f;
    }
    require(sum > 0.0, "Record: features must not all be zero");
    if (label)
        require(*label == 0 || *label == 1, "Record: label must be 0 or 1");
}

LindbladModel ReservoirSpec::model() const {
    if (kind == Kind::Thermal)
        return two_qubit_thermal_model(n_bar, gamma);
    return squeezed_reservoir_model(r, psi, gamma);
}

DensityOperator encode_record(const Record& rec) {
    rec.validate();
    std::vector<cplx> amps(4);
    for (std::size_t i = 0; i < 4; ++i)
        amps[i] = rec.features[i];
    return DensityOperator::from_pure(PureState::normalized(std::move(amps)));
}

std::array<double, 16> steady_features(const DensityOperator& rho0,
                                       const SteadyStateMap& map) {
    const DensityOperator out = map.apply(rho0);
    const ComplexMatrix& m = out.matrix();
    std::array<double, 16> f{};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 4; ++i)
        f[idx++] = m(i, i).real();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            f[idx++] = m(i, j).real();
            f[idx++] = m(i, j).imag();
        }
    return f;
}

std::vector<ReservoirSpec> default_thermal_grid(double gamma) {
    std::vector<ReservoirSpec> grid;
    for (int i = 0; i <= 20; ++i)
        grid.push_back({ReservoirSpec::Kind::Thermal, 0.1 * i, 0.0, 0.0, gamma});
    return grid;
}

std::vector<ReservoirSpec> default_squeezed_grid(double gamma) {
    std::vector<ReservoirSpec> grid;
    for (int i = 0; i <= 10; ++i)
        for (double psi : {0.0, 0.5 * kPi, kPi})
            grid.push_back({ReservoirSpec::Kind::Squeezed, 0.0, 0.1 * i, psi, gamma});
    return grid;
}

ClassifierModel fit(const std::vector<Record>& train,
                    const std::vector<ReservoirSpec>& grid) {
    require(!grid.empty(), "fit: empty reservoir grid");
    std::size_t per_class[2] = {0, 0};
    for (const Record& r : train) {
        r.validate();
        require(r.label.has_value(), "fit: training records must be labeled");
        ++per_class[*r.label];
    }
    require(per_class[0] >= 2 && per_class[1] >= 2,
            "fit: need at least two records per class");

    ClassifierModel best;
    double best_acc = -1.0;
    for (const ReservoirSpec& spec : grid) {
        const SteadyStateMap map = SteadyStateMap::build(spec.model());

        // Least-squares linear readout on [features, 1].
        const std::size_t n = train.size();
        std::vector<double> a(n * 17);
        std::vector<double> y(n);
        std::vector<std::array<double, 16>> feats(n);
        for (std::size_t i = 0; i < n; ++i) {
            feats[i] = steady_features(encode_record(train[i]), map);
            for (std::size_t j = 0; j < 16; ++j)
                a[i * 17 + j] = feats[i][j];
            a[i * 17 + 16] = 1.0;
            y[i] = static_cast<double>(*train[i].label);
        }
        const std::vector<double> sol = linalg::lstsq(a, n, 17, y);

        ClassifierModel cand;
        cand.reservoir = spec;
        for (std::size_t j = 0; j < 16; ++j)
            cand.weights[j] = sol[j];
        cand.bias = sol[16];
        cand.threshold = 0.5;

        std::size_t hits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const int pred = score(cand, feats[i]) >= cand.threshold ? 1 : 0;
            hits += pred == *train[i].label;
        }
        const double acc = static_cast<double>(hits) / static_cast<double>(n);
        if (acc > best_acc) {
            best_acc = acc;
            best = cand;
        }
    }
    return best;
}

int predict(const ClassifierModel& model, const Record& rec) {
    const SteadyStateMap map = SteadyStateMap::build(model.reservoir.model());
    const std::array<double, 16> f = steady_features(encode_record(rec), map);
    return score(model, f) >= model.threshold ? 1 : 0;
}

double accuracy(const ClassifierModel& model, const std::vector<Record>& records) {
    require(!records.empty(), "accuracy: no records");
    const SteadyStateMap map = SteadyStateMap::build(model.reservoir.model());
    std::size_t hits = 0;
    for (const Record& r : records) {
        require(r.label.has_value(), "accuracy: records must be labeled");
        const std::array<double, 16> f = steady_features(encode_record(r), map);
        const int pred = score(model, f) >= model.threshold ? 1 : 0;
        hits += pred == *r.label;
    }
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

std::vector<Record> synthetic_records(std::size_t n, std::uint64_t seed) {
    static const std::array<double, 4> mu0{0.75, 0.25, 0.60, 0.20};
    static const std::array<double, 4> mu1{0.25, 0.70, 0.30, 0.65};
    Rng rng(seed);
    std::vector<Record> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2);
        const auto& mu = label == 0 ? mu0 : mu1;
        Record r;
        r.label = label;
        for (std::size_t j = 0; j < 4; ++j)
            r.features[j] = std::clamp(mu[j] + 0.1 * rng.normal(), 0.0, 1.0);
        out.push_back(r);
    }
    return out;
}

DatasetSplit split_dataset(std::size_t n, double train_fraction,
                           std::uint64_t seed) {
    require(n >= 2, "split_dataset: need at least two records");
    require(train_fraction > 0.0 && train_fraction < 1.0,
            "split_dataset: train_fraction must lie in (0,1)");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(train_fraction * n + 0.5));
    require(n_train >= 1 && n_train < n, "split_dataset: degenerate split");
    DatasetSplit split;
    split.train.assign(idx.begin(), idx.begin() + n_train);
    split.test.assign(idx.begin() + n_train, idx.end());
    return split;
}

std::vector<Record> records_from_csv(const std::string& text) {
    const csv::Table t = csv::read_csv(text, true);
    require(t.header == std::vector<std::string>({"f1", "f2", "f3", "f4", "label"}),
            "dataset csv: header must be f1,f2,f3,f4,label");
    std::vector<Record> out;
    for (const auto& row : t.rows) {
        require(row.size() == 5, "dataset csv: rows need 5 columns");
        Record r;
        for (std::size_t j = 0; j < 4; ++j)
            r.features[j] = std::stod(row[j]);
        if (!row[4].empty())
            r.label = std::stoi(row[4]);
        r.validate();
        out.push_back(r);
    }
    return out;
}

}  // namespace dqml
