// sidkit command-line front end: simulate, identify, perturb, conditioning.
// Exit codes: 0 success, 1 runtime/assumption failure, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sidkit/conditioning.hpp"
#include "sidkit/errors.hpp"
#include "sidkit/hankel.hpp"
#include "sidkit/identify.hpp"
#include "sidkit/lti.hpp"
#include "sidkit/perturbation.hpp"

namespace {

using namespace sidkit;

struct CommonOpts {
    std::uint64_t seed = 0;
    double rankTol = kDefaultRankTol;
    double orderTol = 1e-8;
    std::string format = "json";
};

void addCommonFlags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--rank-tol", opts.rankTol, "relative rank tolerance")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--order-tol", opts.orderTol, "relative order-detection tolerance")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int runSimulate(Index n, Index m, Index p, Index length, const CommonOpts& opts,
                double eigLow, double eigHigh, const std::string& outTraj,
                const std::string& outModel) {
    AssumptionOneSpec spec;
    spec.n = n;
    spec.m = m;
    spec.p = p;
    spec.eigLow = eigLow;
    spec.eigHigh = eigHigh;
    spec.seed = opts.seed;
    const StateSpaceModel model = randomAssumptionOneModel(spec);
    const auto inputs = randomExcitation(p, length, opts.seed + 1);
    const Trajectory traj = simulate(model, inputs);
    saveTrajectoryCsv(traj, outTraj);
    saveModelJson(model, outModel);
    std::cout << "simulate: wrote " << traj.sampleCount() << " samples to " << outTraj
              << " and the model to " << outModel << "\n";
    return 0;
}

int runIdentify(const std::string& input, Index i, std::optional<Index> jOpt,
                const std::string& algorithm, std::optional<Index> forcedOrder,
                const std::string& w1Path, const std::string& w2Path, const CommonOpts& opts,
                const std::string& outModel, const std::string& outDiag) {
    const Trajectory traj = loadTrajectoryCsv(input);
    const Index j = jOpt ? *jOpt : defaultColumnCount(traj.sampleCount(), i);
    const HankelSet h = buildHankelSet(traj, {i, j});
    if (!persistencyOfExcitation(h, opts.rankTol)) {
        throw std::runtime_error("persistency of excitation: rank 2ip not met");
    }
    WeightingScheme w;
    if (!w1Path.empty()) w.w1 = loadMatrixCsv(w1Path);
    if (!w2Path.empty()) w.w2 = loadMatrixCsv(w2Path);
    Tolerances tols;
    tols.rankTol = opts.rankTol;
    tols.orderTol = opts.orderTol;
    tols.forcedOrder = forcedOrder;

    const IdentificationResult res = algorithm == "state"
                                         ? identifyStateApproach(h, w, tols)
                                         : identifyShiftInvariance(h, w, tols);
    saveModelJson(res.model, outModel);

    nlohmann::json diag;
    diag["order"] = res.order;
    diag["method"] = methodName(res.method);
    diag["i"] = i;
    diag["j"] = j;
    std::vector<double> sv(res.core.singularValues.data(),
                           res.core.singularValues.data() + res.core.singularValues.size());
    diag["singular_values"] = sv;
    diag["diagnostics"] = res.diagnostics;
    std::ofstream out(outDiag);
    if (!out) throw std::runtime_error("cannot write diagnostics file: " + outDiag);
    out << diag.dump(2) << "\n";
    std::cout << "identify: order " << res.order << ", model to " << outModel
              << ", diagnostics to " << outDiag << "\n";
    return 0;
}

int runPerturb(Index n, Index m, Index p, std::optional<double> scaleOpt, std::uint64_t trials,
               const std::string& method, std::optional<Index> iOpt, std::optional<Index> jOpt,
               const CommonOpts& opts, const std::string& outPath) {
    AssumptionOneSpec spec;
    spec.n = n;
    spec.m = m;
    spec.p = p;
    spec.seed = opts.seed;
    const StateSpaceModel model = randomAssumptionOneModel(spec);

    PerturbationConfig cfg;
    cfg.i = iOpt ? *iOpt : n + 2;
    cfg.j = jOpt ? *jOpt : 4 * cfg.i * (m + p);
    cfg.tols.rankTol = opts.rankTol;
    cfg.tols.orderTol = opts.orderTol;

    const Method meth = methodFromName(method);
    std::vector<double> scales;
    if (scaleOpt) {
        scales.push_back(*scaleOpt);
    } else {
        scales = {1e-8, 1e-6, 1e-4, 1e-2};
    }

    std::vector<TrialReport> trialsOut;
    std::size_t violations = 0;
    std::size_t validCount = 0;
    for (double scale : scales) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            TrialReport rep = runPerturbationTrial(model, cfg, meth, scale, opts.seed + t);
            if (rep.valid) {
                ++validCount;
                if (!trialSatisfiesBounds(rep)) ++violations;
            }
            trialsOut.push_back(std::move(rep));
        }
    }
    if (opts.format == "csv") {
        writePerturbationReportCsv(trialsOut, outPath);
    } else {
        writePerturbationReportJson(trialsOut, outPath);
    }
    std::cout << "perturb: " << trialsOut.size() << " trials (" << validCount << " valid), "
              << violations << " bound violations, report to " << outPath << "\n";
    if (violations > 0) {
        std::cerr << "perturb: measured error exceeded a theoretical bound in a valid trial\n";
        return 1;
    }
    return 0;
}

int runConditioning(Index nMin, Index nMax, std::uint64_t trials, const CommonOpts& opts,
                    const std::string& outSamples, const std::string& outSummary) {
    const auto reports = runFig2Experiment(nMin, nMax, trials, opts.seed);
    writeConditioningSamplesCsv(reports, outSamples);
    writeConditioningSummaryCsv(reports, outSummary);
    for (const ConditioningReport& rep : reports) {
        std::printf("n=%2lld fraction above Eq.(57) bound: %.4f (bound %.6g)\n",
                    static_cast<long long>(rep.n), fractionAboveBound(rep),
                    rep.theoreticalLowerBound);
    }
    std::cout << "conditioning: samples to " << outSamples << ", summary to " << outSummary
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sidkit: deterministic subspace identification with perturbation bounds"};
    app.require_subcommand(1);

    CommonOpts opts;

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a random minimal model and trajectory");
    Index simN = 2, simM = 1, simP = 1, simLength = 200;
    double eigLow = -1.0, eigHigh = 1.0;
    std::string simOutTraj = "trajectory.csv";
    std::string simOutModel = "model.json";
    sim->add_option("--n", simN, "state dimension")->required()->check(CLI::PositiveNumber);
    sim->add_option("--m", simM, "output dimension")->required()->check(CLI::PositiveNumber);
    sim->add_option("--p", simP, "input dimension")->required()->check(CLI::PositiveNumber);
    sim->add_option("--length", simLength, "number of samples")
        ->required()
        ->check(CLI::PositiveNumber);
    sim->add_option("--eig-low", eigLow, "pole interval lower end");
    sim->add_option("--eig-high", eigHigh, "pole interval upper end");
    sim->add_option("--out-traj", simOutTraj, "trajectory CSV path");
    sim->add_option("--out-model", simOutModel, "model JSON path");
    addCommonFlags(sim, opts);

    // identify
    auto* idf = app.add_subcommand("identify", "identify a state-space model from a trajectory");
    std::string input;
    Index idI = 0;
    Index idJraw = -1;
    std::string algorithm = "state";
    Index orderRaw = -1;
    std::string w1Path, w2Path;
    std::string outModel = "identified.json";
    std::string outDiag = "diagnostics.json";
    idf->add_option("--input", input, "trajectory CSV")->required();
    idf->add_option("--i", idI, "block-row index i")->required()->check(CLI::PositiveNumber);
    idf->add_option("--j", idJraw, "column count j (default s - 2i + 1)");
    idf->add_option("--algorithm", algorithm, "state|shift")
        ->check(CLI::IsMember({"state", "shift"}));
    idf->add_option("--order", orderRaw, "force the model order");
    idf->add_option("--w1", w1Path, "W1 weighting matrix CSV");
    idf->add_option("--w2", w2Path, "W2 weighting matrix CSV");
    idf->add_option("--out-model", outModel, "identified model JSON path");
    idf->add_option("--out-diag", outDiag, "diagnostics JSON path");
    addCommonFlags(idf, opts);

    // perturb
    auto* per = app.add_subcommand("perturb", "perturbation-bound experiment");
    Index perN = 3, perM = 2, perP = 2;
    double perScaleRaw = -1.0;
    std::uint64_t perTrials = 10;
    std::string perMethod = "state";
    Index perIraw = -1, perJraw = -1;
    std::string perOut = "perturbation.json";
    per->add_option("--n", perN, "state dimension")->required()->check(CLI::PositiveNumber);
    per->add_option("--m", perM, "output dimension")->required()->check(CLI::PositiveNumber);
    per->add_option("--p", perP, "input dimension")->required()->check(CLI::PositiveNumber);
    auto* scaleOptFlag =
        per->add_option("--scale", perScaleRaw, "perturbation spectral norm (default: sweep)")
            ->check(CLI::NonNegativeNumber);
    per->add_option("--trials", perTrials, "seeds per scale")
        ->required()
        ->check(CLI::PositiveNumber);
    per->add_option("--method", perMethod, "state|shift")
        ->check(CLI::IsMember({"state", "shift"}));
    per->add_option("--i", perIraw, "block-row index (default n + 2)");
    per->add_option("--j", perJraw, "column count (default 4i(m+p))");
    per->add_option("--out", perOut, "report path");
    addCommonFlags(per, opts);

    // conditioning
    auto* con = app.add_subcommand("conditioning", "observability conditioning experiment");
    Index nMin = 2, nMax = 12;
    std::uint64_t conTrials = 1000;
    std::string outSamples = "cond_samples.csv";
    std::string outSummary = "cond_summary.csv";
    con->add_option("--n-min", nMin, "smallest state dimension")->check(CLI::PositiveNumber);
    con->add_option("--n-max", nMax, "largest state dimension")->check(CLI::PositiveNumber);
    con->add_option("--trials", conTrials, "trials per dimension")
        ->required()
        ->check(CLI::PositiveNumber);
    con->add_option("--out-samples", outSamples, "per-sample CSV path");
    con->add_option("--out-summary", outSummary, "quantile summary CSV path");
    addCommonFlags(con, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            return runSimulate(simN, simM, simP, simLength, opts, eigLow, eigHigh, simOutTraj,
                               simOutModel);
        }
        if (idf->parsed()) {
            std::optional<Index> j = idJraw >= 0 ? std::optional<Index>(idJraw) : std::nullopt;
            std::optional<Index> order =
                orderRaw >= 0 ? std::optional<Index>(orderRaw) : std::nullopt;
            return runIdentify(input, idI, j, algorithm, order, w1Path, w2Path, opts, outModel,
                               outDiag);
        }
        if (per->parsed()) {
            std::optional<double> scale = scaleOptFlag->count() > 0
                                              ? std::optional<double>(perScaleRaw)
                                              : std::nullopt;
            std::optional<Index> i = perIraw >= 0 ? std::optional<Index>(perIraw) : std::nullopt;
            std::optional<Index> j = perJraw >= 0 ? std::optional<Index>(perJraw) : std::nullopt;
            return runPerturb(perN, perM, perP, scale, perTrials, perMethod, i, j, opts, perOut);
        }
        if (con->parsed()) {
            return runConditioning(nMin, nMax, conTrials, opts, outSamples, outSummary);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
