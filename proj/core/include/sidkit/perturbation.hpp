#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sidkit/identify.hpp"

namespace sidkit {

/// Evaluation of the least-squares perturbation inequality for
/// min ||A x - B||_F  vs  min ||(A+EA) x - (B+EB)||_F.
struct LsPerturbationBound {
    double condA = 0.0;
    double gammaPlus = 0.0;  ///< 1 - ||A^+|| ||EA||
    double normEA = 0.0;
    double normEB = 0.0;
    double normA = 0.0;
    double residualNorm = 0.0;  ///< ||r_x|| = ||B - A x*||
    double etaNorm = 0.0;       ///< ||A^{+H} x*||
    double boundGeneral = 0.0;  ///< rank-preserving case bound
    double boundFullRank = 0.0; ///< full-column-rank case bound (NaN if inapplicable)
    double bound = 0.0;         ///< the applicable one of the two
    bool fullRankCase = false;
    bool valid = false;
    std::string reason;
};

LsPerturbationBound boundLeastSquares(const Matrix& a, const Matrix& b, const Matrix& ea,
                                      const Matrix& eb, double rankTol = kDefaultRankTol);

/// Bounds on the system-matrix error of one identification method under
/// perturbations of the quantities its final solve consumes.
struct SystemMatrixBound {
    Method method = Method::State;
    double sigmaMin = 0.0;  ///< sigma_min(A_I) or sigma_min(Gamma_i)
    double thetaNorm = 0.0; ///< ||[A B; C D]|| or ||A||
    std::map<std::string, double> perturbationNorms;
    std::map<std::string, double> bounds;
    bool valid = false;
    std::string reason;
};

/// State approach (perturbations of the recovered state sequences).
/// Bounds: "eq30" (rank-preserving), "eq31" (full row rank), "eq35"
/// (Frobenius variant).
SystemMatrixBound boundStateApproach(const IdentificationResult& base, const Matrix& eXi,
                                     const Matrix& eXiPlus);

/// Shift-invariance approach (perturbations of Gamma_i, L and M).
/// Bounds: "eq37", "eq38" (A), "eq39" (C, an equality), "eq40", "eq42" (B/D).
SystemMatrixBound boundShiftInvariance(const IdentificationResult& base, const Matrix& eGamma,
                                       const Matrix& eL, const Matrix& eM);

/// Hausdorff-distance bound on the pole error driven by a system-matrix
/// perturbation bound delta.
struct PoleBound {
    double delta = 0.0;
    Index n = 0;
    double aBarFrobenius = 0.0;
    double bound = 0.0;         ///< coefficient [(1+1/sqrt(n))^n - 1]^(1/n)
    double boundRelaxed = 0.0;  ///< relaxed coefficient (1 + 1/sqrt(n))
};

/// delta taken from the "eq31" bound. Throws std::invalid_argument when the
/// system-matrix bound is invalid.
PoleBound boundPolesState(const SystemMatrixBound& smb, const Matrix& aBar);

/// delta' taken from the "eq38" bound.
PoleBound boundPolesShift(const SystemMatrixBound& smb, const Matrix& aBar);

/// Gaussian matrix rescaled to the exact requested spectral norm
/// (zero matrix when scale is 0).
Matrix randomSpectralNormPerturbation(Index rows, Index cols, double scale,
                                      std::mt19937_64& engine);

struct PerturbationConfig {
    Index i = 0;
    Index j = 0;
    Tolerances tols;
};

/// One controlled-perturbation experiment: simulate noiseless data, identify,
/// inject perturbations of the given spectral norm into the quantities the
/// relevant theorem perturbs, recompute the affected solves in the same
/// basis, and report measured errors next to theoretical bounds.
struct TrialReport {
    std::uint64_t seed = 0;
    double scale = 0.0;
    Method method = Method::State;
    std::map<std::string, double> measured;
    std::map<std::string, double> bounds;
    bool valid = false;
    std::string reason;
};

TrialReport runPerturbationTrial(const StateSpaceModel& model, const PerturbationConfig& cfg,
                                 Method method, double scale, std::uint64_t seed);

/// True when every enforced bound of a *valid* trial holds (equality Eq. 39
/// checked to eqTol). Invalid trials pass vacuously.
bool trialSatisfiesBounds(const TrialReport& trial, double eqTol = 1e-12);

/// Report JSON: {"trials": [{seed, scale, method, measured, bounds, valid,
/// reason}, ...]}.
void writePerturbationReportJson(const std::vector<TrialReport>& trials,
                                 const std::filesystem::path& path);

/// Flat CSV alternative: one row per (trial, quantity) pair.
void writePerturbationReportCsv(const std::vector<TrialReport>& trials,
                                const std::filesystem::path& path);

}  // namespace sidkit
