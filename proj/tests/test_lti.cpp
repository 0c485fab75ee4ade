#include <doctest.h>

#include <cmath>
#include <random>

#include "sidkit/errors.hpp"
#include "sidkit/lti.hpp"
#include "test_support.hpp"

using namespace sidkit;
using namespace sidkit::testing;

namespace {

StateSpaceModel scalarModel(double a, double b, double c, double d) {
    StateSpaceModel model;
    model.A = Matrix::Constant(1, 1, a);
    model.B = Matrix::Constant(1, 1, b);
    model.C = Matrix::Constant(1, 1, c);
    model.D = Matrix::Constant(1, 1, d);
    return model;
}

std::vector<Vector> scalarInputs(std::initializer_list<double> values) {
    std::vector<Vector> seq;
    for (double v : values) seq.push_back(Vector::Constant(1, v));
    return seq;
}

}  // namespace

TEST_CASE("simulate runs the exact recursion") {
    const auto model = scalarModel(0.5, 1, 1, 0);
    const Trajectory traj = simulate(model, scalarInputs({1, 0, 0}));
    REQUIRE(traj.sampleCount() == 3);
    CHECK(traj.outputs[0](0) == 0.0);
    CHECK(traj.outputs[1](0) == 1.0);
    CHECK(traj.outputs[2](0) == 0.5);
}

TEST_CASE("simulate feedthrough-only and zero cases") {
    StateSpaceModel model;
    model.A = Matrix::Zero(2, 2);
    model.B = Matrix::Zero(2, 2);
    model.C = Matrix::Zero(2, 2);
    model.D = Matrix::Identity(2, 2);
    std::mt19937_64 eng(31);
    std::vector<Vector> us;
    for (int k = 0; k < 5; ++k) us.push_back(randomMatrix(2, 1, eng).col(0));
    const Trajectory traj = simulate(model, us);
    for (int k = 0; k < 5; ++k) CHECK(traj.outputs[k] == us[k]);

    const auto zeroIn = std::vector<Vector>(4, Vector::Zero(2));
    const Trajectory quiet = simulate(model, Vector::Zero(2), zeroIn);
    for (const Vector& y : quiet.outputs) CHECK(y.isZero(0.0));
}

TEST_CASE("simulate rejects dimension mismatches") {
    const auto model = scalarModel(0.5, 1, 1, 0);
    CHECK_THROWS_AS(simulate(model, Vector::Zero(2), scalarInputs({1})), std::invalid_argument);
    std::vector<Vector> bad{Vector::Zero(2)};
    CHECK_THROWS_AS(simulate(model, bad), std::invalid_argument);
}

TEST_CASE("markovParameters direct products") {
    const auto model = scalarModel(0.5, 1, 1, 0);
    const auto params = markovParameters(model, 4);
    REQUIRE(params.size() == 4);
    CHECK(params[0](0, 0) == 0.0);
    CHECK(params[1](0, 0) == 1.0);
    CHECK(params[2](0, 0) == 0.5);
    CHECK(params[3](0, 0) == 0.25);

    const auto justD = markovParameters(model, 1);
    REQUIRE(justD.size() == 1);
    CHECK(justD[0] == model.D);
}

TEST_CASE("markovParameters equal the impulse response of simulate") {
    const StateSpaceModel model = wellPosedModel(3, 2, 2, 5);
    const int horizon = 6;
    const auto params = markovParameters(model, horizon);
    for (Index ch = 0; ch < model.p(); ++ch) {
        std::vector<Vector> impulse(horizon, Vector::Zero(model.p()));
        impulse[0](ch) = 1.0;
        const Trajectory traj = simulate(model, impulse);
        for (int k = 0; k < horizon; ++k) {
            CHECK((traj.outputs[k] - params[k].col(ch)).norm() <= 1e-12);
        }
    }
}

TEST_CASE("extendedObservability layouts") {
    const StateSpaceModel model = wellPosedModel(3, 2, 1, 6);
    CHECK(extendedObservability(model, 1) == model.C);

    StateSpaceModel still = model;
    still.A = Matrix::Identity(3, 3);
    const Matrix gamma = extendedObservability(still, 4);
    for (Index r = 0; r < 4; ++r) CHECK(gamma.middleRows(2 * r, 2) == still.C);

    const Matrix g4 = extendedObservability(model, 4);
    Matrix power = Matrix::Identity(3, 3);
    for (Index r = 0; r < 4; ++r) {
        CHECK(spectralNorm(g4.middleRows(2 * r, 2) - model.C * power) <= 1e-12);
        power = power * model.A;
    }
}

TEST_CASE("randomAssumptionOneModel is reproducible and well-formed") {
    AssumptionOneSpec spec;
    spec.n = 4;
    spec.m = 2;
    spec.p = 2;
    spec.seed = 99;
    const StateSpaceModel a = randomAssumptionOneModel(spec);
    const StateSpaceModel b = randomAssumptionOneModel(spec);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.C == b.C);
    CHECK(a.D == b.D);

    // diagonal A with spaced poles
    CHECK(a.A.isDiagonal(0.0));
    Vector d = a.A.diagonal();
    std::sort(d.data(), d.data() + d.size());
    for (Index k = 0; k + 1 < d.size(); ++k) CHECK(d(k + 1) - d(k) >= 1e-6);

    CHECK(rankWithTol(extendedObservability(a, 4)) == 4);
    CHECK(rankWithTol(controllabilityMatrix(a, 4)) == 4);

    // n = 1: scalar pole, observability reduces to |C| > 0
    AssumptionOneSpec tiny;
    tiny.seed = 3;
    const StateSpaceModel s1 = randomAssumptionOneModel(tiny);
    CHECK(s1.n() == 1);
    CHECK(std::abs(s1.C(0, 0)) > 1e-10);
}

TEST_CASE("poles of a generated model equal its diagonal") {
    AssumptionOneSpec spec;
    spec.n = 5;
    spec.seed = 123;
    const StateSpaceModel model = randomAssumptionOneModel(spec);
    const Spectrum sp = poles(model);
    Vector expected = model.A.diagonal();
    std::sort(expected.data(), expected.data() + expected.size());
    std::vector<double> got;
    for (const Complex& z : sp) {
        CHECK(z.imag() == 0.0);
        got.push_back(z.real());
    }
    std::sort(got.begin(), got.end());
    for (Index k = 0; k < expected.size(); ++k) {
        CHECK(got[static_cast<std::size_t>(k)] == doctest::Approx(expected(k)).epsilon(1e-12));
    }
}

TEST_CASE("randomExcitation determinism, persistency and sample mean") {
    const auto a = randomExcitation(2, 50, 42);
    const auto b = randomExcitation(2, 50, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);

    const Index i = 3, j = 2 * i * 1 + 6;
    Trajectory traj;
    traj.inputDim = 1;
    traj.outputDim = 1;
    traj.inputs = randomExcitation(1, 2 * i + j - 1, 7);
    traj.outputs = std::vector<Vector>(traj.inputs.size(), Vector::Zero(1));
    CHECK(persistencyOfExcitation(buildHankelSet(traj, {i, j})));

    const auto big = randomExcitation(1, 100000, 2024);
    double sum = 0.0;
    for (const Vector& u : big) sum += u(0);
    CHECK(std::abs(sum / 1e5) <= 0.02);
}

TEST_CASE("noiseless data factors as Yf = Gamma Xf + Toeplitz(Markov) Uf") {
    const StateSpaceModel model = wellPosedModel(3, 2, 2, 8);
    const Index i = 4, j = 50;
    const auto inputs = randomExcitation(model.p(), 2 * i + j - 1, 9);
    const Trajectory traj = simulate(model, inputs);
    const HankelSet h = buildHankelSet(traj, {i, j});

    const auto xs = stateTrajectory(model, Vector::Zero(3), inputs);
    Matrix xf(3, j);
    for (Index c = 0; c < j; ++c) xf.col(c) = xs[static_cast<std::size_t>(i + c)];

    const Matrix gamma = extendedObservability(model, i);
    const auto markov = markovParameters(model, static_cast<int>(i));
    Matrix toeplitz = Matrix::Zero(i * model.m(), i * model.p());
    for (Index r = 0; r < i; ++r) {
        for (Index c = 0; c <= r; ++c) {
            toeplitz.block(r * model.m(), c * model.p(), model.m(), model.p()) =
                markov[static_cast<std::size_t>(r - c)];
        }
    }
    const Matrix lhs = h.Yf;
    const Matrix rhs = gamma * xf + toeplitz * h.Uf;
    CHECK(spectralNorm(lhs - rhs) <= 1e-8 * std::max(1.0, spectralNorm(lhs)));
}

TEST_CASE("model JSON round trip validates dimensions") {
    const StateSpaceModel model = wellPosedModel(2, 1, 2, 10);
    const auto path = std::filesystem::temp_directory_path() / "sidkit_tests" / "model.json";
    std::filesystem::create_directories(path.parent_path());
    saveModelJson(model, path);
    const StateSpaceModel loaded = loadModelJson(path);
    CHECK(loaded.A == model.A);
    CHECK(loaded.B == model.B);
    CHECK(loaded.C == model.C);
    CHECK(loaded.D == model.D);
}
