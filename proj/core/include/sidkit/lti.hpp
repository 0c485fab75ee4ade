#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "sidkit/hankel.hpp"
#include "sidkit/spectral.hpp"

namespace sidkit {

/// Discrete-time LTI state-space model
///   x_{k+1} = A x_k + B u_k,   y_k = C x_k + D u_k.
struct StateSpaceModel {
    Matrix A;  ///< n x n
    Matrix B;  ///< n x p
    Matrix C;  ///< m x n
    Matrix D;  ///< m x p

    Index n() const { return A.rows(); }
    Index m() const { return C.rows(); }
    Index p() const { return B.cols(); }

    /// Throws std::invalid_argument on inconsistent dimensions or NaN/Inf.
    void validate() const;
};

/// Exact recursion of the state equation; output length equals input length.
Trajectory simulate(const StateSpaceModel& model, const Vector& x0,
                    const std::vector<Vector>& inputs);

/// simulate with x0 = 0.
Trajectory simulate(const StateSpaceModel& model, const std::vector<Vector>& inputs);

/// Markov parameters (D, CB, CAB, ..., CA^{count-2}B); the similarity-invariant
/// impulse-response fingerprint.
std::vector<Matrix> markovParameters(const StateSpaceModel& model, int count);

/// Extended observability matrix [C; CA; ...; CA^{i-1}], size (i*m) x n.
Matrix extendedObservability(const StateSpaceModel& model, Index i);

/// Controllability (reachability) matrix [B, AB, ..., A^{i-1}B], n x (i*p).
Matrix controllabilityMatrix(const StateSpaceModel& model, Index i);

/// Eigenvalues of A.
Spectrum poles(const StateSpaceModel& model);

/// Recipe for random minimal models with diagonal A (distinct real poles).
struct AssumptionOneSpec {
    Index n = 1;
    Index m = 1;
    Index p = 1;
    double eigLow = -1.0;   ///< eigenvalue sampling interval
    double eigHigh = 1.0;
    std::uint64_t seed = 0;
    double minSpacing = 1e-6;      ///< resample poles closer than this
    double structTol = 1e-10;      ///< observability/controllability rank tolerance
};

/// Draws A diagonal with distinct poles uniform on [eigLow, eigHigh] and
/// B, C, D entries uniform on [-1, 1]; regenerates until the observability and
/// controllability rank diagnostics pass. Throws GenerationError after 100
/// attempts.
StateSpaceModel randomAssumptionOneModel(const AssumptionOneSpec& spec);

/// i.i.d. standard-normal excitation, deterministic under a fixed seed.
std::vector<Vector> randomExcitation(Index p, Index length, std::uint64_t seed);

/// Model JSON: {"n":..,"m":..,"p":..,"A":[[..]],"B":..,"C":..,"D":..},
/// row-major nested arrays. The reader validates dimensions.
StateSpaceModel loadModelJson(const std::filesystem::path& path);
void saveModelJson(const StateSpaceModel& model, const std::filesystem::path& path);

}  // namespace sidkit
