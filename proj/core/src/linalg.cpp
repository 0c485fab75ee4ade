#include "sidkit/linalg.hpp"

#include <Eigen/SVD>

#include <stdexcept>
#include <string>

namespace sidkit {

namespace {

double effectiveTol(double rankTol) {
    if (rankTol < 0.0) throw std::invalid_argument("rank tolerance must be non-negative");
    return rankTol == 0.0 ? kDefaultRankTol : rankTol;
}

}  // namespace

void requireFinite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": matrix contains NaN or Inf");
    }
}

SvdFactors thinSvd(const Matrix& m) {
    requireFinite(m, "thinSvd");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double spectralNorm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    requireFinite(m, "spectralNorm");
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double sigmaMinNonzero(const Matrix& m, double rankTol) {
    const double tol = effectiveTol(rankTol);
    if (m.size() == 0) return 0.0;
    requireFinite(m, "sigmaMinNonzero");
    Eigen::BDCSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0.0;
    const double thr = tol * s(0);
    double smin = 0.0;
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > thr) smin = s(k);
    }
    return smin;
}

Matrix pinv(const Matrix& m, double rankTol) {
    const double tol = effectiveTol(rankTol);
    requireFinite(m, "pinv");
    if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    const double thr = s.size() > 0 ? tol * s(0) : 0.0;
    Vector inv = Vector::Zero(s.size());
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > thr) inv(k) = 1.0 / s(k);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix rowProjector(const Matrix& b, double rankTol) {
    const double tol = effectiveTol(rankTol);
    requireFinite(b, "rowProjector");
    if (b.rows() < 1) throw std::invalid_argument("rowProjector: matrix has no rows");
    // Pi_B = V_r V_r^T with V_r the right singular vectors above tolerance;
    // identical to B^T (B B^T)^+ B without squaring the condition number.
    Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    const double thr = s.size() > 0 ? tol * s(0) : 0.0;
    Index r = 0;
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > thr) ++r;
    }
    const Matrix vr = svd.matrixV().leftCols(r);
    return vr * vr.transpose();
}

Matrix obliqueProject(const Matrix& a, const Matrix& b, const Matrix& c, double rankTol) {
    const double tol = effectiveTol(rankTol);
    if (a.cols() != b.cols() || a.cols() != c.cols()) {
        throw std::invalid_argument("obliqueProject: operands must share the column count");
    }
    requireFinite(a, "obliqueProject(a)");
    requireFinite(b, "obliqueProject(b)");
    requireFinite(c, "obliqueProject(c)");
    // A Pi_B^perp = A - (A B^+) B, avoiding the dense l x l projector.
    const Matrix bp = pinv(b, tol);
    const Matrix aPerp = a - (a * bp) * b;
    const Matrix cPerp = c - (c * bp) * b;
    return (aPerp * pinv(cPerp, tol)) * c;
}

Index rankWithTol(const Matrix& m, double rankTol) {
    const double tol = effectiveTol(rankTol);
    if (m.size() == 0) return 0;
    requireFinite(m, "rankWithTol");
    Eigen::BDCSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double thr = tol * s(0);
    Index r = 0;
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > thr) ++r;
    }
    return r;
}

double condSpectral(const Matrix& m, double rankTol) {
    const double tol = effectiveTol(rankTol);
    requireFinite(m, "condSpectral");
    if (m.size() == 0 || m.isZero(0.0)) {
        throw std::domain_error("condSpectral: condition number undefined for zero matrix");
    }
    Eigen::BDCSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    const double thr = tol * s(0);
    double smin = 0.0;
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > thr) smin = s(k);
    }
    return s(0) / smin;
}

}  // namespace sidkit
