#include "sidkit/pipeline.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sidkit/errors.hpp"

namespace sidkit {

std::pair<Matrix, Matrix> computeObliqueProjections(const HankelSet& h, double rankTol) {
    Matrix oi = obliqueProject(h.Yf, h.Uf, h.Wp, rankTol);
    Matrix oiMinus = h.i >= 2 ? obliqueProject(h.YfMinus, h.UfMinus, h.WpPlus, rankTol)
                              : Matrix::Zero(0, h.j);
    return {std::move(oi), std::move(oiMinus)};
}

Index detectOrder(const Vector& singularValues, double orderTol, std::optional<Index> forcedOrder) {
    if (singularValues.size() == 0) {
        throw std::invalid_argument("detectOrder: empty singular value list");
    }
    if (forcedOrder) {
        return std::clamp<Index>(*forcedOrder, 0, singularValues.size());
    }
    if (orderTol < 0.0) throw std::invalid_argument("detectOrder: tolerance must be non-negative");
    const double smax = singularValues(0);
    const double thr = orderTol * smax;
    Index order = 0;
    for (Index k = 0; k < singularValues.size(); ++k) {
        if (singularValues(k) > thr) ++order;
    }
    return order;
}

IdentificationCore runUnifyingPipeline(const HankelSet& h, const WeightingScheme& w,
                                       double orderTol, double rankTol,
                                       std::optional<Index> forcedOrder) {
    if (h.i < 2) {
        throw StructuralError("runUnifyingPipeline: i must be >= 2 (O_{i-1} needs a block row)");
    }
    const Index im = h.i * h.m;

    if (w.w1 && (w.w1->rows() != im || w.w1->cols() != im)) {
        throw WeightingError("W1 must be im x im");
    }
    if (w.w1 && rankWithTol(*w.w1, rankTol) != im) {
        throw WeightingError("W1 is singular at the rank tolerance");
    }
    if (w.w2 && (w.w2->rows() != h.j || w.w2->cols() != h.j)) {
        throw WeightingError("W2 must be j x j");
    }
    if (w.w2 && rankWithTol(h.Wp, rankTol) != rankWithTol(h.Wp * (*w.w2), rankTol)) {
        throw WeightingError("W2 drops the rank of Wp: rank[Wp] != rank[Wp W2]");
    }

    IdentificationCore core;
    core.i = h.i;
    core.j = h.j;
    core.p = h.p;
    core.m = h.m;
    std::tie(core.Oi, core.OiMinus) = computeObliqueProjections(h, rankTol);

    Matrix weighted = core.Oi;
    if (w.w1) weighted = (*w.w1) * weighted;
    if (w.w2) weighted = weighted * (*w.w2);

    // Full U is needed for the annihilator U2^T; V obtained thin.
    Eigen::JacobiSVD<Matrix> svd(weighted, Eigen::ComputeFullU | Eigen::ComputeThinV);
    core.singularValues = svd.singularValues();

    core.order = detectOrder(core.singularValues, orderTol, forcedOrder);
    if (core.order == 0) {
        throw StructuralError("runUnifyingPipeline: detected order is zero (no signal above tolerance)");
    }
    const Index n = core.order;

    core.U1 = svd.matrixU().leftCols(n);
    core.S1 = core.singularValues.head(n);
    core.V1 = svd.matrixV().leftCols(n);

    const Vector sqrtS = core.S1.cwiseSqrt();
    Matrix u1s = core.U1 * sqrtS.asDiagonal();
    const Matrix u2 = svd.matrixU().rightCols(im - n);
    if (w.w1) {
        Eigen::PartialPivLU<Matrix> lu(*w.w1);
        core.GammaI = lu.solve(u1s);
        core.GammaPerp = u2.transpose() * (*w.w1);
    } else {
        core.GammaI = std::move(u1s);
        core.GammaPerp = u2.transpose();
    }
    core.GammaIMinus = core.GammaI.topRows(core.GammaI.rows() - h.m);

    core.Xi = pinv(core.GammaI, rankTol) * core.Oi;
    core.XiPlus = pinv(core.GammaIMinus, rankTol) * core.OiMinus;
    return core;
}

}  // namespace sidkit
