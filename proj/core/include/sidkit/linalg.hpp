#pragma once

#include <Eigen/Dense>

namespace sidkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance used for every rank decision when the caller passes 0
/// (singular values <= tol * sigma_max count as zero).
inline constexpr double kDefaultRankTol = 1e-10;

/// Thin SVD factors, M = leftVectors * diag(singularValues) * rightVectors^T,
/// singular values sorted in non-increasing order.
struct SvdFactors {
    Matrix leftVectors;
    Vector singularValues;
    Matrix rightVectors;
};

/// Thin SVD of a finite matrix. Throws std::invalid_argument on NaN/Inf input.
SvdFactors thinSvd(const Matrix& m);

/// Largest singular value; 0 for an empty matrix.
double spectralNorm(const Matrix& m);

/// Smallest singular value above the rank tolerance (the paper's sigma_min,
/// i.e. smallest *nonzero* singular value). Returns 0 for a zero matrix.
double sigmaMinNonzero(const Matrix& m, double rankTol = kDefaultRankTol);

/// Moore-Penrose inverse by SVD truncation: singular values
/// <= rankTol * sigma_max are treated as zero.
Matrix pinv(const Matrix& m, double rankTol = kDefaultRankTol);

/// Orthogonal projector onto the row space of b:  Pi_B = B^T (B B^T)^+ B.
/// Symmetric and idempotent; I - rowProjector(b) projects onto the
/// orthogonal complement.
Matrix rowProjector(const Matrix& b, double rankTol = kDefaultRankTol);

/// Oblique projection of the row space of a along the row space of b onto
/// the row space of c:  A /_B C = A Pi_B^perp (C Pi_B^perp)^+ C.
/// All three operands must share the column count.
Matrix obliqueProject(const Matrix& a, const Matrix& b, const Matrix& c,
                      double rankTol = kDefaultRankTol);

/// Number of singular values > rankTol * sigma_max.
Index rankWithTol(const Matrix& m, double rankTol = kDefaultRankTol);

/// Spectral condition number sigma_max / sigma_min, sigma_min taken above the
/// rank tolerance (matches cond(A) = ||A|| ||A^+||). Throws std::domain_error
/// for a zero matrix.
double condSpectral(const Matrix& m, double rankTol = kDefaultRankTol);

/// Throws std::invalid_argument if the matrix contains NaN or Inf.
void requireFinite(const Matrix& m, const char* what);

}  // namespace sidkit
