#include "sidkit/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace sidkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safeRatio(double num, double den) { return den > 0.0 ? num / den : kInf; }

Matrix assembleTheta(const StateSpaceModel& model) {
    Matrix theta(model.n() + model.m(), model.n() + model.p());
    theta << model.A, model.B, model.C, model.D;
    return theta;
}

double poleCoefficient(double n, bool relaxed) {
    const double base = relaxed ? (1.0 + 1.0 / std::sqrt(n))
                                : std::pow(std::pow(1.0 + 1.0 / std::sqrt(n), n) - 1.0, 1.0 / n);
    return std::pow(n, 1.0 / n) * base;
}

double poleBoundValue(double n, double delta, double aBarF, bool relaxed) {
    if (delta == 0.0) return 0.0;
    return poleCoefficient(n, relaxed) *
           std::pow(std::sqrt(n) * delta + aBarF, 1.0 - 1.0 / n) * std::pow(delta, 1.0 / n);
}

}  // namespace

LsPerturbationBound boundLeastSquares(const Matrix& a, const Matrix& b, const Matrix& ea,
                                      const Matrix& eb, double rankTol) {
    if (ea.rows() != a.rows() || ea.cols() != a.cols() || eb.rows() != b.rows() ||
        eb.cols() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("boundLeastSquares: dimension mismatch");
    }
    LsPerturbationBound out;
    out.normA = spectralNorm(a);
    out.normEA = spectralNorm(ea);
    out.normEB = spectralNorm(eb);
    if (out.normA == 0.0) {
        out.valid = false;
        out.reason = "A is the zero matrix";
        out.bound = out.boundGeneral = out.boundFullRank = kNaN;
        return out;
    }

    const Matrix adag = pinv(a, rankTol);
    const Matrix x = adag * b;
    const Matrix rx = b - a * x;
    const Matrix eta = adag.transpose() * x;
    const double normAdag = spectralNorm(adag);
    out.condA = out.normA * normAdag;
    out.gammaPlus = 1.0 - normAdag * out.normEA;
    out.residualNorm = spectralNorm(rx);
    out.etaNorm = spectralNorm(eta);

    const Index rankA = rankWithTol(a, rankTol);
    const Index rankA1 = rankWithTol(a + ea, rankTol);
    out.fullRankCase = rankA == a.cols() && rankA1 == a.cols();

    if (rankA != rankA1) {
        out.valid = false;
        out.reason = "rank changed under perturbation";
    } else if (out.gammaPlus <= 0.0) {
        out.valid = false;
        out.reason = "margin violated: ||A^+|| ||E_A|| >= 1";
    } else {
        out.valid = true;
    }

    const double normX = spectralNorm(x);
    if (out.gammaPlus > 0.0) {
        const double common = out.normEA / out.normA * normX + out.normEB / out.normA +
                              out.condA * out.normEA * out.residualNorm /
                                  (out.gammaPlus * out.normA * out.normA);
        out.boundGeneral = out.condA / out.gammaPlus * (common + out.normEA * out.etaNorm);
        out.boundFullRank = out.fullRankCase ? out.condA / out.gammaPlus * common : kNaN;
    } else {
        out.boundGeneral = kInf;
        out.boundFullRank = out.fullRankCase ? kInf : kNaN;
    }
    out.bound = out.fullRankCase ? out.boundFullRank : out.boundGeneral;
    return out;
}

SystemMatrixBound boundStateApproach(const IdentificationResult& base, const Matrix& eXi,
                                     const Matrix& eXiPlus) {
    if (base.method != Method::State) {
        throw std::invalid_argument("boundStateApproach: result is not from the state approach");
    }
    SystemMatrixBound out;
    out.method = Method::State;
    out.sigmaMin = base.diagnostics.at("sigma_min_AI");
    out.thetaNorm = base.diagnostics.at("norm_theta");
    const double cond = base.diagnostics.at("cond_AI");
    const double thetaF = base.diagnostics.at("norm_theta_frob");
    const auto n = static_cast<double>(base.order);
    const auto p = static_cast<double>(base.core.p);

    const double nEXi = spectralNorm(eXi);
    const double nEXiPlus = spectralNorm(eXiPlus);
    const double fEXi = eXi.norm();
    const double fEXiPlus = eXiPlus.norm();
    out.perturbationNorms = {{"E_Xi", nEXi},
                             {"E_XiPlus", nEXiPlus},
                             {"E_Xi_frob", fEXi},
                             {"E_XiPlus_frob", fEXiPlus}};

    const double margin = out.sigmaMin - nEXi;
    out.bounds["eq30"] = safeRatio(nEXiPlus + (1.0 + cond) * nEXi * out.thetaNorm, margin);
    out.bounds["eq31"] = safeRatio(nEXi * out.thetaNorm + nEXiPlus, margin);
    out.bounds["eq35"] = safeRatio(std::sqrt(n + p) * (fEXi * thetaF + fEXiPlus), margin);

    const bool fullRowRank =
        base.diagnostics.at("rank_AI") == n + p;
    if (nEXi >= out.sigmaMin) {
        out.valid = false;
        out.reason = "margin violated: ||E_Xi|| >= sigma_min(A_I)";
    } else if (!fullRowRank) {
        out.valid = false;
        out.reason = "A_I rank-deficient: rank preservation not certifiable";
    } else {
        out.valid = true;
    }
    return out;
}

SystemMatrixBound boundShiftInvariance(const IdentificationResult& base, const Matrix& eGamma,
                                       const Matrix& eL, const Matrix& eM) {
    if (base.method != Method::Shift) {
        throw std::invalid_argument(
            "boundShiftInvariance: result is not from the shift-invariance approach");
    }
    SystemMatrixBound out;
    out.method = Method::Shift;
    out.sigmaMin = base.diagnostics.at("sigma_min_gamma");
    out.thetaNorm = base.diagnostics.at("norm_A");
    const double condG = base.diagnostics.at("cond_gamma");
    const double sigmaL = base.diagnostics.at("sigma_min_L");
    const double condL = base.diagnostics.at("cond_L");
    const double normL = base.diagnostics.at("norm_L");
    const double normDB = base.diagnostics.at("norm_DB");
    const double etaPrime = base.diagnostics.at("eta_prime");

    const double nEG = spectralNorm(eGamma);
    const double nEL = spectralNorm(eL);
    const double nEM = spectralNorm(eM);
    const double nEGtop = spectralNorm(eGamma.topRows(base.core.m));
    out.perturbationNorms = {{"E_Gamma", nEG}, {"E_L", nEL}, {"E_M", nEM}};

    const double marginG = out.sigmaMin - nEG;
    out.bounds["eq37"] = safeRatio(nEG * (1.0 + (1.0 + condG) * out.thetaNorm), marginG);
    out.bounds["eq38"] = safeRatio(nEG * (1.0 + out.thetaNorm), marginG);
    out.bounds["eq39"] = nEGtop;  // equality for the C error

    const double gammaPrime = sigmaL > 0.0 ? 1.0 - nEL / sigmaL : -kInf;
    if (gammaPrime > 0.0) {
        out.bounds["eq40"] =
            condL / gammaPrime * (nEL / normL * normDB + nEM / normL + nEL * etaPrime);
        out.bounds["eq42"] = condL / (gammaPrime * normL) * (nEL * normDB + nEM);
    } else {
        out.bounds["eq40"] = kInf;
        out.bounds["eq42"] = kInf;
    }

    std::string reason;
    bool valid = true;
    if (nEG >= out.sigmaMin) {
        valid = false;
        reason = "margin violated: ||E_Gamma|| >= sigma_min(Gamma_i)";
    }
    const auto n = static_cast<double>(base.order);
    if (base.diagnostics.at("rank_L") != n + base.core.m) {
        valid = false;
        if (!reason.empty()) reason += "; ";
        reason += "L rank-deficient: rank preservation not certifiable";
    }
    if (gammaPrime <= 0.0) {
        valid = false;
        if (!reason.empty()) reason += "; ";
        reason += "margin violated: ||L^+|| ||E_L|| >= 1";
    }
    out.valid = valid;
    out.reason = reason;
    return out;
}

namespace {

PoleBound makePoleBound(const SystemMatrixBound& smb, const Matrix& aBar, const char* key) {
    if (!smb.valid) {
        throw std::invalid_argument(std::string("pole bound refused: ") +
                                    (smb.reason.empty() ? "invalid system-matrix bound" : smb.reason.c_str()));
    }
    if (aBar.rows() != aBar.cols() || aBar.rows() < 1) {
        throw std::invalid_argument("pole bound: A must be square and non-empty");
    }
    PoleBound out;
    out.delta = smb.bounds.at(key);
    out.n = aBar.rows();
    out.aBarFrobenius = aBar.norm();
    const auto n = static_cast<double>(out.n);
    out.bound = poleBoundValue(n, out.delta, out.aBarFrobenius, /*relaxed=*/false);
    out.boundRelaxed = poleBoundValue(n, out.delta, out.aBarFrobenius, /*relaxed=*/true);
    return out;
}

}  // namespace

PoleBound boundPolesState(const SystemMatrixBound& smb, const Matrix& aBar) {
    if (smb.method != Method::State) {
        throw std::invalid_argument("boundPolesState: expected a state-approach bound");
    }
    return makePoleBound(smb, aBar, "eq31");
}

PoleBound boundPolesShift(const SystemMatrixBound& smb, const Matrix& aBar) {
    if (smb.method != Method::Shift) {
        throw std::invalid_argument("boundPolesShift: expected a shift-invariance bound");
    }
    return makePoleBound(smb, aBar, "eq38");
}

Matrix randomSpectralNormPerturbation(Index rows, Index cols, double scale,
                                      std::mt19937_64& engine) {
    if (scale < 0.0) throw std::invalid_argument("perturbation scale must be >= 0");
    if (scale == 0.0 || rows == 0 || cols == 0) return Matrix::Zero(rows, cols);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) g(r, c) = normal(engine);
    }
    const double s = spectralNorm(g);
    if (s == 0.0) return Matrix::Zero(rows, cols);
    return g * (scale / s);
}

TrialReport runPerturbationTrial(const StateSpaceModel& model, const PerturbationConfig& cfg,
                                 Method method, double scale, std::uint64_t seed) {
    if (scale < 0.0) throw std::invalid_argument("runPerturbationTrial: scale must be >= 0");
    TrialReport rep;
    rep.seed = seed;
    rep.scale = scale;
    rep.method = method;

    const Index length = 2 * cfg.i + cfg.j - 1;
    const auto inputs = randomExcitation(model.p(), length, seed);
    const Trajectory traj = simulate(model, inputs);
    const HankelSet h = buildHankelSet(traj, {cfg.i, cfg.j});
    std::mt19937_64 perturbEng(seed ^ 0x9e3779b97f4a7c15ULL);

    if (method == Method::State) {
        const IdentificationResult base =
            identifyStateApproach(h, WeightingScheme::identity(), cfg.tols);
        const Index n = base.order;
        const Matrix eXi = randomSpectralNormPerturbation(n, cfg.j, scale, perturbEng);
        const Matrix eXiPlus = randomSpectralNormPerturbation(n, cfg.j, scale, perturbEng);
        const SystemMatrixBound smb = boundStateApproach(base, eXi, eXiPlus);
        rep.bounds = smb.bounds;
        rep.valid = smb.valid;
        rep.reason = smb.reason;

        Matrix aiHat(n + h.p, cfg.j);
        aiHat << base.core.Xi + eXi, h.Uii;
        Matrix biHat(n + h.m, cfg.j);
        biHat << base.core.XiPlus + eXiPlus, h.Yii;
        const Matrix thetaHat = biHat * pinv(aiHat, cfg.tols.rankTol);
        const Matrix thetaBar = assembleTheta(base.model);
        rep.measured["theta"] = spectralNorm(thetaHat - thetaBar);
        rep.measured["theta_frob"] = (thetaHat - thetaBar).norm();
        rep.measured["pole_dh"] =
            hausdorffDistance(Matrix(thetaHat.topLeftCorner(n, n)), base.model.A);
        if (smb.valid) {
            const PoleBound pb = boundPolesState(smb, base.model.A);
            rep.bounds["pole_eq47"] = pb.bound;
            rep.bounds["pole_relaxed"] = pb.boundRelaxed;
        }
    } else {
        const IdentificationResult base =
            identifyShiftInvariance(h, WeightingScheme::identity(), cfg.tols);
        const Index n = base.order;
        const ShiftBdSystem sys = buildShiftBdSystem(h, base.core, cfg.tols.rankTol);
        const Matrix eGamma =
            randomSpectralNormPerturbation(base.core.GammaI.rows(), n, scale, perturbEng);
        const Matrix eL = randomSpectralNormPerturbation(sys.L.rows(), sys.L.cols(), scale,
                                                         perturbEng);
        const Matrix eM = randomSpectralNormPerturbation(sys.M.rows(), sys.M.cols(), scale,
                                                         perturbEng);
        const SystemMatrixBound smb = boundShiftInvariance(base, eGamma, eL, eM);
        rep.bounds = smb.bounds;
        rep.valid = smb.valid;
        rep.reason = smb.reason;

        const Matrix gammaHat = base.core.GammaI + eGamma;
        const Matrix aHat = pinv(Matrix(gammaHat.topRows(gammaHat.rows() - h.m)), cfg.tols.rankTol) *
                            gammaHat.bottomRows(gammaHat.rows() - h.m);
        const Matrix cHat = gammaHat.topRows(h.m);
        rep.measured["A"] = spectralNorm(aHat - base.model.A);
        rep.measured["C"] = spectralNorm(cHat - base.model.C);
        rep.measured["pole_dh"] = hausdorffDistance(aHat, base.model.A);

        Matrix dbBar(h.m + n, h.p);
        dbBar << base.model.D, base.model.B;
        const Matrix dbHat = pinv(sys.L + eL, cfg.tols.rankTol) * (sys.M + eM);
        rep.measured["DB"] = spectralNorm(dbHat - dbBar);
        if (smb.valid) {
            const PoleBound pb = boundPolesShift(smb, base.model.A);
            rep.bounds["pole_eq53"] = pb.bound;
            rep.bounds["pole_relaxed"] = pb.boundRelaxed;
        }
    }
    return rep;
}

bool trialSatisfiesBounds(const TrialReport& trial, double eqTol) {
    if (!trial.valid) return true;
    const auto leq = [&](const char* meas, const char* bnd) {
        return trial.measured.at(meas) <= trial.bounds.at(bnd);
    };
    if (trial.method == Method::State) {
        return leq("theta", "eq30") && leq("theta", "eq31") && leq("theta_frob", "eq35") &&
               leq("pole_dh", "pole_eq47") && leq("pole_dh", "pole_relaxed");
    }
    const bool eq39 = std::abs(trial.measured.at("C") - trial.bounds.at("eq39")) <= eqTol;
    return leq("A", "eq37") && leq("A", "eq38") && eq39 && leq("DB", "eq40") &&
           leq("DB", "eq42") && leq("pole_dh", "pole_eq53") && leq("pole_dh", "pole_relaxed");
}

namespace {

nlohmann::json trialToJson(const TrialReport& t) {
    nlohmann::json j;
    j["seed"] = t.seed;
    j["scale"] = t.scale;
    j["method"] = methodName(t.method);
    j["measured"] = t.measured;
    j["bounds"] = t.bounds;
    j["valid"] = t.valid;
    j["reason"] = t.reason;
    return j;
}

}  // namespace

void writePerturbationReportJson(const std::vector<TrialReport>& trials,
                                 const std::filesystem::path& path) {
    nlohmann::json j;
    j["trials"] = nlohmann::json::array();
    for (const TrialReport& t : trials) j["trials"].push_back(trialToJson(t));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path.string());
    out << j.dump(2) << "\n";
}

void writePerturbationReportCsv(const std::vector<TrialReport>& trials,
                                const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path.string());
    out << "seed,scale,method,kind,name,value,valid\n";
    char buf[40];
    const auto emit = [&](const TrialReport& t, const char* kind, const std::string& name,
                          double value) {
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        out << t.seed << ',' << t.scale << ',' << methodName(t.method) << ',' << kind << ','
            << name << ',' << buf << ',' << (t.valid ? 1 : 0) << "\n";
    };
    for (const TrialReport& t : trials) {
        for (const auto& [name, value] : t.measured) emit(t, "measured", name, value);
        for (const auto& [name, value] : t.bounds) emit(t, "bound", name, value);
    }
}

}  // namespace sidkit
