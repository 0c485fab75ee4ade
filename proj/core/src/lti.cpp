#include "sidkit/lti.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sidkit/errors.hpp"

namespace sidkit {

using nlohmann::json;

void StateSpaceModel::validate() const {
    if (A.rows() != A.cols()) throw std::invalid_argument("StateSpaceModel: A must be square");
    if (B.rows() != A.rows()) throw std::invalid_argument("StateSpaceModel: B rows must equal n");
    if (C.cols() != A.rows()) throw std::invalid_argument("StateSpaceModel: C cols must equal n");
    if (D.rows() != C.rows() || D.cols() != B.cols()) {
        throw std::invalid_argument("StateSpaceModel: D must be m x p");
    }
    requireFinite(A, "StateSpaceModel A");
    requireFinite(B, "StateSpaceModel B");
    requireFinite(C, "StateSpaceModel C");
    requireFinite(D, "StateSpaceModel D");
}

Trajectory simulate(const StateSpaceModel& model, const Vector& x0,
                    const std::vector<Vector>& inputs) {
    model.validate();
    if (x0.size() != model.n()) throw std::invalid_argument("simulate: x0 size must equal n");
    Trajectory traj;
    traj.inputDim = static_cast<int>(model.p());
    traj.outputDim = static_cast<int>(model.m());
    traj.inputs = inputs;
    traj.outputs.reserve(inputs.size());
    Vector x = x0;
    for (const Vector& u : inputs) {
        if (u.size() != model.p()) throw std::invalid_argument("simulate: input dimension mismatch");
        traj.outputs.push_back(model.C * x + model.D * u);
        x = model.A * x + model.B * u;
    }
    return traj;
}

Trajectory simulate(const StateSpaceModel& model, const std::vector<Vector>& inputs) {
    return simulate(model, Vector::Zero(model.n()), inputs);
}

std::vector<Matrix> markovParameters(const StateSpaceModel& model, int count) {
    model.validate();
    if (count < 1) throw std::invalid_argument("markovParameters: count must be >= 1");
    std::vector<Matrix> params;
    params.reserve(static_cast<std::size_t>(count));
    params.push_back(model.D);
    Matrix power = model.B;  // A^k B
    for (int k = 1; k < count; ++k) {
        params.push_back(model.C * power);
        power = model.A * power;
    }
    return params;
}

Matrix extendedObservability(const StateSpaceModel& model, Index i) {
    model.validate();
    if (i < 1) throw std::invalid_argument("extendedObservability: i must be >= 1");
    const Index m = model.m();
    Matrix gamma(i * m, model.n());
    Matrix row = model.C;
    for (Index k = 0; k < i; ++k) {
        gamma.middleRows(k * m, m) = row;
        if (k + 1 < i) row = row * model.A;
    }
    return gamma;
}

Matrix controllabilityMatrix(const StateSpaceModel& model, Index i) {
    model.validate();
    if (i < 1) throw std::invalid_argument("controllabilityMatrix: i must be >= 1");
    const Index p = model.p();
    Matrix ctrb(model.n(), i * p);
    Matrix col = model.B;
    for (Index k = 0; k < i; ++k) {
        ctrb.middleCols(k * p, p) = col;
        if (k + 1 < i) col = model.A * col;
    }
    return ctrb;
}

Spectrum poles(const StateSpaceModel& model) { return eigenvalues(model.A); }

StateSpaceModel randomAssumptionOneModel(const AssumptionOneSpec& spec) {
    if (spec.n < 1 || spec.m < 1 || spec.p < 1) {
        throw std::invalid_argument("randomAssumptionOneModel: dimensions must be >= 1");
    }
    if (!(spec.eigLow < spec.eigHigh)) {
        throw std::invalid_argument("randomAssumptionOneModel: empty eigenvalue range");
    }
    std::mt19937_64 eng(spec.seed);
    std::uniform_real_distribution<double> eig(spec.eigLow, spec.eigHigh);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (int attempt = 0; attempt < 100; ++attempt) {
        Vector diag(spec.n);
        bool distinct = false;
        for (int draw = 0; draw < 1000 && !distinct; ++draw) {
            for (Index k = 0; k < spec.n; ++k) diag(k) = eig(eng);
            Vector sorted = diag;
            std::sort(sorted.data(), sorted.data() + sorted.size());
            distinct = true;
            for (Index k = 0; k + 1 < spec.n; ++k) {
                if (sorted(k + 1) - sorted(k) < spec.minSpacing) distinct = false;
            }
        }
        if (!distinct) continue;

        StateSpaceModel model;
        model.A = diag.asDiagonal();
        model.B.resize(spec.n, spec.p);
        model.C.resize(spec.m, spec.n);
        model.D.resize(spec.m, spec.p);
        for (Index r = 0; r < spec.n; ++r) {
            for (Index c = 0; c < spec.p; ++c) model.B(r, c) = unit(eng);
        }
        for (Index r = 0; r < spec.m; ++r) {
            for (Index c = 0; c < spec.n; ++c) model.C(r, c) = unit(eng);
        }
        for (Index r = 0; r < spec.m; ++r) {
            for (Index c = 0; c < spec.p; ++c) model.D(r, c) = unit(eng);
        }

        const bool observable =
            rankWithTol(extendedObservability(model, spec.n), spec.structTol) == spec.n;
        const bool controllable =
            rankWithTol(controllabilityMatrix(model, spec.n), spec.structTol) == spec.n;
        if (observable && controllable) return model;
    }
    throw GenerationError("randomAssumptionOneModel: no admissible model after 100 attempts");
}

std::vector<Vector> randomExcitation(Index p, Index length, std::uint64_t seed) {
    if (p < 1 || length < 1) {
        throw std::invalid_argument("randomExcitation: p and length must be >= 1");
    }
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Vector> seq;
    seq.reserve(static_cast<std::size_t>(length));
    for (Index k = 0; k < length; ++k) {
        Vector u(p);
        for (Index c = 0; c < p; ++c) u(c) = normal(eng);
        seq.push_back(std::move(u));
    }
    return seq;
}

namespace {

json matrixToJson(const Matrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrixFromJson(const json& j, Index rows, Index cols, const char* name) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
        throw std::invalid_argument(std::string("model JSON: ") + name + " has wrong row count");
    }
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw std::invalid_argument(std::string("model JSON: ") + name +
                                        " has wrong column count");
        }
        for (Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

}  // namespace

StateSpaceModel loadModelJson(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path.string());
    json j;
    in >> j;
    const auto n = j.at("n").get<Index>();
    const auto m = j.at("m").get<Index>();
    const auto p = j.at("p").get<Index>();
    if (n < 1 || m < 1 || p < 1) throw std::invalid_argument("model JSON: dimensions must be >= 1");
    StateSpaceModel model;
    model.A = matrixFromJson(j.at("A"), n, n, "A");
    model.B = matrixFromJson(j.at("B"), n, p, "B");
    model.C = matrixFromJson(j.at("C"), m, n, "C");
    model.D = matrixFromJson(j.at("D"), m, p, "D");
    model.validate();
    return model;
}

void saveModelJson(const StateSpaceModel& model, const std::filesystem::path& path) {
    model.validate();
    json j;
    j["n"] = model.n();
    j["m"] = model.m();
    j["p"] = model.p();
    j["A"] = matrixToJson(model.A);
    j["B"] = matrixToJson(model.B);
    j["C"] = matrixToJson(model.C);
    j["D"] = matrixToJson(model.D);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace sidkit
