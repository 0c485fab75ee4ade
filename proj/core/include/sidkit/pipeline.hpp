#pragma once

#include <optional>
#include <utility>

#include "sidkit/hankel.hpp"

namespace sidkit {

/// Weighting matrices parameterizing the SIM variant. Empty optionals stand
/// for the identity (the default path; avoids forming and inverting W1).
/// Admissibility: W1 full rank, rank[Wp] == rank[Wp W2].
struct WeightingScheme {
    std::optional<Matrix> w1;  ///< im x im, or identity when empty
    std::optional<Matrix> w2;  ///< j x j, or identity when empty

    static WeightingScheme identity() { return {}; }
};

/// Everything the unifying theorem extracts from one Hankel set:
/// the oblique projections, the weighted SVD restricted to the detected
/// order, the observability matrices and the recovered state sequences.
struct IdentificationCore {
    Index i = 0;
    Index j = 0;
    int p = 0;
    int m = 0;

    Matrix Oi;       ///< Y_f /_{U_f} W_p
    Matrix OiMinus;  ///< Y_f^- /_{U_f^-} W_p^+

    Matrix U1;             ///< left singular vectors, first `order` columns
    Vector S1;             ///< leading singular values (strictly positive)
    Matrix V1;             ///< right singular vectors, first `order` columns
    Vector singularValues; ///< the full singular value list of W1 Oi W2

    Index order = 0;     ///< detected (or forced) order n'
    Matrix GammaI;       ///< W1^{-1} U1 S1^{1/2}, im x n'
    Matrix GammaIMinus;  ///< GammaI without its last m rows
    Matrix GammaPerp;    ///< U2^T W1, (im - n') x im; annihilates GammaI
    Matrix Xi;           ///< GammaI^+ Oi       (state sequence X_i)
    Matrix XiPlus;       ///< GammaIMinus^+ OiMinus (state sequence X_{i+1})
};

/// Oblique projections O_i = Yf /_{Uf} Wp and O_{i-1} = Yf^- /_{Uf^-} Wp^+.
std::pair<Matrix, Matrix> computeObliqueProjections(const HankelSet& h,
                                                    double rankTol = kDefaultRankTol);

/// Order = number of singular values > orderTol * sigma_max, or the forced
/// order clipped to the list length. The list must be non-increasing and
/// non-empty.
Index detectOrder(const Vector& singularValues, double orderTol = 1e-8,
                  std::optional<Index> forcedOrder = std::nullopt);

/// The full unifying-theorem pipeline: projections, weighted SVD, order
/// detection, Gamma_i and state sequences (similarity transform T = I).
/// Throws WeightingError when W1 is singular or W2 drops the rank of Wp;
/// throws StructuralError when the detected order is zero or i < 2.
IdentificationCore runUnifyingPipeline(const HankelSet& h, const WeightingScheme& w,
                                       double orderTol = 1e-8, double rankTol = kDefaultRankTol,
                                       std::optional<Index> forcedOrder = std::nullopt);

}  // namespace sidkit
