#include "sidkit/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sidkit/errors.hpp"

namespace sidkit {

const char* methodName(Method method) {
    return method == Method::State ? "state" : "shift";
}

Method methodFromName(const std::string& name) {
    if (name == "state") return Method::State;
    if (name == "shift") return Method::Shift;
    throw std::invalid_argument("unknown method '" + name + "' (expected state|shift)");
}

namespace {

StateSpaceModel modelFromTheta(const Matrix& theta, Index n, Index m, Index p) {
    StateSpaceModel model;
    model.A = theta.topLeftCorner(n, n);
    model.B = theta.topRightCorner(n, p);
    model.C = theta.bottomLeftCorner(m, n);
    model.D = theta.bottomRightCorner(m, p);
    return model;
}

}  // namespace

IdentificationResult identifyStateApproach(const HankelSet& h, const WeightingScheme& w,
                                           const Tolerances& tols) {
    IdentificationResult res;
    res.method = Method::State;
    res.core = runUnifyingPipeline(h, w, tols.orderTol, tols.rankTol, tols.forcedOrder);
    const Index n = res.core.order;
    res.order = n;

    Matrix ai(n + h.p, h.j);
    ai << res.core.Xi, h.Uii;
    Matrix bi(n + h.m, h.j);
    bi << res.core.XiPlus, h.Yii;

    // Theta A_I = B_I, minimum Frobenius norm solution Theta = B_I A_I^+.
    const Matrix theta = bi * pinv(ai, tols.rankTol);
    res.model = modelFromTheta(theta, n, h.m, h.p);

    res.diagnostics["sigma_min_AI"] = sigmaMinNonzero(ai, tols.rankTol);
    res.diagnostics["cond_AI"] = condSpectral(ai, tols.rankTol);
    res.diagnostics["rank_AI"] = static_cast<double>(rankWithTol(ai, tols.rankTol));
    res.diagnostics["norm_theta"] = spectralNorm(theta);
    res.diagnostics["norm_theta_frob"] = theta.norm();
    res.diagnostics["residual_state_rel"] =
        (bi - theta * ai).norm() / std::max(1e-300, bi.norm());
    return res;
}

Matrix buildShiftBdCoefficient(const IdentificationCore& core) {
    const Index i = core.i;
    const Index m = core.m;
    const Index n = core.order;
    const Index q = i * m - n;  // rows of the annihilator
    // Block-Hankel of the annihilator's m-wide column blocks, zero-padded
    // below the anti-diagonal.
    Matrix lh = Matrix::Zero(i * q, i * m);
    for (Index r = 0; r < i; ++r) {
        for (Index t = 0; r + t < i; ++t) {
            lh.block(r * q, t * m, q, m) = core.GammaPerp.middleCols((r + t) * m, m);
        }
    }
    Matrix coef = Matrix::Zero(i * m, m + n);
    coef.topLeftCorner(m, m) = Matrix::Identity(m, m);
    coef.bottomRightCorner((i - 1) * m, n) = core.GammaIMinus;
    return lh * coef;
}

ShiftBdSystem buildShiftBdSystem(const HankelSet& h, const IdentificationCore& core,
                                 double rankTol) {
    const Index i = core.i;
    const Index q = i * core.m - core.order;
    const Matrix mFull = core.GammaPerp * h.Yf * pinv(h.Uf, rankTol);
    Matrix mStack(i * q, h.p);
    for (Index k = 0; k < i; ++k) {
        mStack.middleRows(k * q, q) = mFull.middleCols(k * h.p, h.p);
    }
    return {buildShiftBdCoefficient(core), std::move(mStack)};
}

IdentificationResult identifyShiftInvariance(const HankelSet& h, const WeightingScheme& w,
                                             const Tolerances& tols) {
    IdentificationResult res;
    res.method = Method::Shift;
    res.core = runUnifyingPipeline(h, w, tols.orderTol, tols.rankTol, tols.forcedOrder);
    const Index n = res.core.order;
    res.order = n;
    if (h.m * h.i <= n) {
        throw StructuralError(
            "identifyShiftInvariance: the annihilator needs m*i > n'; increase i");
    }

    const Matrix& gamma = res.core.GammaI;
    const Matrix& gammaUnder = res.core.GammaIMinus;       // Gamma_i without last m rows
    const Matrix gammaOver = gamma.bottomRows(gamma.rows() - h.m);  // without first m rows

    StateSpaceModel model;
    model.A = pinv(gammaUnder, tols.rankTol) * gammaOver;
    model.C = gamma.topRows(h.m);

    const ShiftBdSystem sys = buildShiftBdSystem(h, res.core, tols.rankTol);
    const Matrix db = pinv(sys.L, tols.rankTol) * sys.M;
    model.D = db.topRows(h.m);
    model.B = db.bottomRows(n);
    res.model = std::move(model);

    res.diagnostics["sigma_min_gamma"] = sigmaMinNonzero(gamma, tols.rankTol);
    res.diagnostics["cond_gamma"] = condSpectral(gamma, tols.rankTol);
    res.diagnostics["sigma_min_gamma_under"] = sigmaMinNonzero(gammaUnder, tols.rankTol);
    res.diagnostics["rank_gamma_under"] =
        static_cast<double>(rankWithTol(gammaUnder, tols.rankTol));
    res.diagnostics["norm_A"] = spectralNorm(res.model.A);
    res.diagnostics["sigma_min_L"] = sigmaMinNonzero(sys.L, tols.rankTol);
    res.diagnostics["rank_L"] = static_cast<double>(rankWithTol(sys.L, tols.rankTol));
    res.diagnostics["cond_L"] = condSpectral(sys.L, tols.rankTol);
    res.diagnostics["norm_L"] = spectralNorm(sys.L);
    res.diagnostics["norm_DB"] = spectralNorm(db);
    res.diagnostics["eta_prime"] = spectralNorm(pinv(sys.L, tols.rankTol).transpose() * db);
    res.diagnostics["residual_bd_rel"] =
        (sys.M - sys.L * db).norm() / std::max(1e-300, sys.M.norm());
    return res;
}

SimilarityReport compareUpToSimilarity(const StateSpaceModel& a, const StateSpaceModel& b,
                                       int horizon) {
    if (a.m() != b.m() || a.p() != b.p()) {
        throw std::invalid_argument("compareUpToSimilarity: input/output dimensions must match");
    }
    if (horizon < 1) throw std::invalid_argument("compareUpToSimilarity: horizon must be >= 1");
    SimilarityReport rep;
    rep.poleHausdorff = a.n() == b.n() ? hausdorffDistance(a.A, b.A)
                                       : std::numeric_limits<double>::infinity();
    const auto ma = markovParameters(a, horizon);
    const auto mb = markovParameters(b, horizon);
    for (std::size_t k = 0; k < ma.size(); ++k) {
        const double rel = spectralNorm(ma[k] - mb[k]) / std::max(1.0, spectralNorm(ma[k]));
        rep.markovRelError = std::max(rep.markovRelError, rel);
    }
    return rep;
}

}  // namespace sidkit
