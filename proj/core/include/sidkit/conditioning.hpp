#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sidkit/linalg.hpp"

namespace sidkit {

/// The decay-rate constant rho = e^{pi^2/4} (~ 11.79).
double rhoConstant();

/// Upper bound on the smallest singular value of the extended observability
/// matrix of an n-state, m-output system:
///   sigma_n(Gamma_i) <= 4 rho^{-floor((n-1)/(2m))} ||Gamma_i||.
double sigmaMinBoundGamma(Index n, Index m, double gammaNorm);

/// Matching lower bound on its condition number:
///   cond(Gamma_i) >= (1/4) rho^{floor((n-1)/(2m))}.
double condLowerBoundGamma(Index n, Index m);

/// Krylov-structured matrix X = [J, D J, ..., D^{blocks-1} J] with diagonal D.
struct KrylovStructured {
    Matrix Jp;     ///< n x p block
    Vector diagD;  ///< diagonal of D (real)
    Index blocks;  ///< number of blocks

    Index n() const { return Jp.rows(); }
    Index p() const { return Jp.cols(); }
    Matrix assemble() const;
};

/// Validates D diagonal (throws std::invalid_argument for non-diagonal D,
/// the unsupported structure) and p <= n.
KrylovStructured makeKrylovStructured(const Matrix& jp, const Matrix& d, Index blocks);

/// Singular-value decay check for a Krylov-structured matrix: the bound uses
/// the exponent floor((min(n, blocks*pEff) - 1) / (2 pEff)) with
/// pEff = p - 1 for odd p > 1 (interlacing reduction) and pEff = p otherwise.
struct KrylovBoundCheck {
    double sigmaMin = 0.0;
    double normX = 0.0;
    double bound = 0.0;
    bool holds = false;
};

KrylovBoundCheck verifyKrylovSigmaBound(const KrylovStructured& k);

/// Condition-number samples of Gamma_n for one state dimension n, with the
/// theoretical lower bound attached. Samples whose sigma_min fell below the
/// rank tolerance are recorded as right-censored (cond at least 1/rankTol).
struct ConditioningReport {
    Index n = 0;
    Index m = 1;
    Index i = 0;
    std::uint64_t trials = 0;
    std::vector<double> condSamples;
    std::vector<bool> censoredFlags;
    double theoreticalLowerBound = 0.0;
    double rho = 0.0;
};

/// Reproduces the observability-conditioning experiment: for each n in
/// [nMin, nMax], sample A diagonal and C (1 x n) uniform on [-1, 1] (distinct
/// poles), build Gamma_n with i = n, m = 1, and record cond(Gamma_n).
/// Reproducible: the same seed yields bitwise-identical samples.
std::vector<ConditioningReport> runFig2Experiment(Index nMin, Index nMax, std::uint64_t trials,
                                                  std::uint64_t seed);

/// Fraction of samples (censored ones count as satisfying) at or above the
/// report's Eq.-style lower bound.
double fractionAboveBound(const ConditioningReport& report);

/// Median of the sampled condition numbers.
double medianCond(const ConditioningReport& report);

/// Plot-data CSV: columns n,trial,cond,lower_bound (cond printed as inf for
/// right-censored samples).
void writeConditioningSamplesCsv(const std::vector<ConditioningReport>& reports,
                                 const std::filesystem::path& path);

/// Summary CSV: columns n,q05,q25,q50,q75,q95,lower_bound.
void writeConditioningSummaryCsv(const std::vector<ConditioningReport>& reports,
                                 const std::filesystem::path& path);

}  // namespace sidkit
