#pragma once

#include <map>
#include <string>

#include "sidkit/lti.hpp"
#include "sidkit/pipeline.hpp"

namespace sidkit {

enum class Method { State, Shift };

const char* methodName(Method method);
Method methodFromName(const std::string& name);

/// Tolerances threaded through an identification run.
struct Tolerances {
    double rankTol = kDefaultRankTol;
    double orderTol = 1e-8;
    std::optional<Index> forcedOrder;
};

/// Output of one identification: the realized model, the detected order, the
/// pipeline core it came from, and the scalar diagnostics the perturbation
/// bounds of this library consume (sigma_min / cond / norms / residuals).
struct IdentificationResult {
    StateSpaceModel model;
    Index order = 0;
    Method method = Method::State;
    IdentificationCore core;
    std::map<std::string, double> diagnostics;
};

/// State approach: runs the unifying pipeline, then solves
///   [X_{i+1}; Y_ii] = [A B; C D] [X_i; U_ii]
/// as a minimum-norm least-squares problem.
/// Diagnostics: sigma_min_AI, cond_AI, norm_theta, norm_theta_frob,
/// residual_state_rel.
IdentificationResult identifyStateApproach(const HankelSet& h, const WeightingScheme& w,
                                           const Tolerances& tols = {});

/// Shift-invariance approach: A from the observability shift, C from the
/// first block row, B and D from the annihilator least-squares system.
/// Requires i >= 2 and m*i > n'.
/// Diagnostics: sigma_min_gamma, cond_gamma, sigma_min_gamma_under, norm_A,
/// sigma_min_L, cond_L, norm_L, norm_DB, eta_prime, residual_bd_rel.
IdentificationResult identifyShiftInvariance(const HankelSet& h, const WeightingScheme& w,
                                             const Tolerances& tols = {});

/// The B/D least-squares system of the shift approach: coefficient
/// L = hankel(L_1..L_i) diag(I_m, GammaIMinus) and right-hand side
/// M = stack(M_1..M_i) with [M_1 ... M_i] = GammaPerp Yf Uf^+.
/// The unknown is [D; B].
struct ShiftBdSystem {
    Matrix L;
    Matrix M;
};

ShiftBdSystem buildShiftBdSystem(const HankelSet& h, const IdentificationCore& core,
                                 double rankTol = kDefaultRankTol);

/// Rebuilds only the coefficient L from a pipeline core (no data needed).
Matrix buildShiftBdCoefficient(const IdentificationCore& core);

/// Similarity-invariant comparison: exact pole Hausdorff distance plus the
/// worst relative Markov-parameter error over k < horizon.
struct SimilarityReport {
    double poleHausdorff = 0.0;
    double markovRelError = 0.0;
};

SimilarityReport compareUpToSimilarity(const StateSpaceModel& a, const StateSpaceModel& b,
                                       int horizon);

}  // namespace sidkit
