// Exercises the command-line tool end to end (separate binary, not doctest).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sidkit/identify.hpp"
#include "sidkit/lti.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(const std::string& bin, const std::string& args) {
    const int rc = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::size_t lineCount(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) ++count;
    return count;
}

}  // namespace

int main() {
#ifndef SIDKIT_CLI_BIN
    std::printf("FAIL: CLI binary path not configured\n");
    return 1;
#else
    const std::string bin = SIDKIT_CLI_BIN;
    const fs::path dir = fs::temp_directory_path() / "sidkit_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto at = [&](const char* name) { return (dir / name).string(); };

    // --- simulate: contract, determinism, validation
    check(run(bin, "simulate --n 3 --m 1 --p 1 --length 200 --seed 7 --out-traj " +
                       at("t1.csv") + " --out-model " + at("m1.json")) == 0,
          "simulate exits 0");
    check(lineCount(dir / "t1.csv") == 201, "trajectory has 200 rows plus header");
    check(run(bin, "simulate --n 3 --m 1 --p 1 --length 200 --seed 7 --out-traj " +
                       at("t2.csv") + " --out-model " + at("m2.json")) == 0,
          "simulate rerun exits 0");
    check(slurp(dir / "t1.csv") == slurp(dir / "t2.csv"), "same seed gives identical trajectory");
    check(slurp(dir / "m1.json") == slurp(dir / "m2.json"), "same seed gives identical model");
    check(run(bin, "simulate --n 0 --m 1 --p 1 --length 10") == 2, "bad --n exits 2");
    check(run(bin, "nonsense") == 2, "unknown subcommand exits 2");

    // --- identify: round trip, cross-algorithm agreement, forced order
    check(run(bin, "identify --input " + at("t1.csv") + " --i 5 --algorithm state --out-model " +
                       at("ids.json") + " --out-diag " + at("ds.json")) == 0,
          "identify (state) exits 0");
    check(run(bin, "identify --input " + at("t1.csv") + " --i 5 --algorithm shift --out-model " +
                       at("idh.json") + " --out-diag " + at("dh.json")) == 0,
          "identify (shift) exits 0");
    {
        const auto truth = sidkit::loadModelJson(dir / "m1.json");
        const auto viaState = sidkit::loadModelJson(dir / "ids.json");
        const auto viaShift = sidkit::loadModelJson(dir / "idh.json");
        const auto repS = sidkit::compareUpToSimilarity(truth, viaState, 10);
        const auto repH = sidkit::compareUpToSimilarity(truth, viaShift, 10);
        check(repS.poleHausdorff <= 1e-6, "state poles match the generating model");
        check(repH.poleHausdorff <= 1e-6, "shift poles match the generating model");
        const auto cross = sidkit::compareUpToSimilarity(viaState, viaShift, 10);
        check(cross.poleHausdorff <= 1e-6, "state and shift agree on the pole set");

        const json diag = json::parse(slurp(dir / "ds.json"));
        check(diag.at("order").get<int>() == 3, "diagnostics carry the detected order");
        check(diag.at("singular_values").size() == 5, "diagnostics carry the singular values");
        check(diag.at("diagnostics").contains("sigma_min_AI"),
              "diagnostics carry the bound inputs");
    }
    check(run(bin, "identify --input " + at("t1.csv") +
                       " --i 5 --algorithm state --order 2 --out-model " + at("idf.json") +
                       " --out-diag " + at("df.json")) == 0,
          "identify with forced order exits 0");
    check(sidkit::loadModelJson(dir / "idf.json").n() == 2, "forced order is honored");

    // explicit identity weight files give the same model as the default path
    {
        std::ofstream w1(dir / "w1.csv");
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 5; ++c) w1 << (r == c ? 1 : 0) << (c + 1 < 5 ? "," : "\n");
        }
    }
    check(run(bin, "identify --input " + at("t1.csv") + " --i 5 --algorithm state --w1 " +
                       at("w1.csv") + " --out-model " + at("idw.json") + " --out-diag " +
                       at("dw.json")) == 0,
          "identify with explicit W1 exits 0");
    {
        const auto viaDefault = sidkit::loadModelJson(dir / "ids.json");
        const auto viaWeights = sidkit::loadModelJson(dir / "idw.json");
        const auto rep = sidkit::compareUpToSimilarity(viaDefault, viaWeights, 10);
        check(rep.poleHausdorff <= 1e-8, "identity W1 file reproduces the default result");
    }
    check(run(bin, "identify --input " + at("t1.csv") + " --i 5 --w1 " + at("t1.csv") +
                       " --out-model " + at("x.json") + " --out-diag " + at("y.json")) == 1,
          "ill-shaped W1 exits 1");

    // short data: the persistency check must fail with exit 1
    {
        std::ofstream out(dir / "short.csv");
        out << "k,u1,y1\n";
        for (int k = 0; k < 12; ++k) out << k << ",1.0,1.0\n";  // constant input
    }
    check(run(bin, "identify --input " + at("short.csv") + " --i 3 --out-model " +
                       at("x.json") + " --out-diag " + at("y.json")) == 1,
          "non-exciting input exits 1");
    check(run(bin, "identify --input " + at("missing.csv") + " --i 3 --out-model " +
                       at("x.json") + " --out-diag " + at("y.json")) == 1,
          "missing input file exits 1");

    // --- perturb: zero scale, default sweep, report schema
    check(run(bin, "perturb --n 2 --m 1 --p 1 --scale 0 --trials 3 --method state --seed 3 "
                   "--out " +
                       at("p0.json")) == 0,
          "perturb at scale 0 exits 0");
    {
        const json rep = json::parse(slurp(dir / "p0.json"));
        bool allZero = true;
        for (const auto& t : rep.at("trials")) {
            for (const auto& [key, value] : t.at("measured").items()) {
                if (value.get<double>() != 0.0) allZero = false;
            }
            if (!t.at("valid").get<bool>()) allZero = false;
        }
        check(rep.at("trials").size() == 3, "scale-0 report has one record per trial");
        check(allZero, "scale-0 measured errors are all zero");
    }
    check(run(bin, "perturb --n 3 --m 2 --p 2 --trials 3 --method shift --seed 1 --out " +
                       at("psweep.json")) == 0,
          "default perturb sweep exits 0 (all bounds hold)");
    {
        const json rep = json::parse(slurp(dir / "psweep.json"));
        check(rep.at("trials").size() == 12, "default sweep covers 4 scales x trials");
        const auto& first = rep.at("trials").at(0);
        check(first.contains("seed") && first.contains("scale") && first.contains("method") &&
                  first.contains("measured") && first.contains("bounds") &&
                  first.contains("valid") && first.contains("reason"),
              "report records carry the full schema");
    }
    check(run(bin, "perturb --n 2 --m 1 --p 1 --scale 1e-6 --trials 2 --method state --seed 4 "
                   "--format csv --out " +
                       at("p.csv")) == 0,
          "perturb with csv format exits 0");
    check(lineCount(dir / "p.csv") > 1, "csv report is non-empty");

    // --- conditioning: row counts, determinism
    check(run(bin, "conditioning --n-min 2 --n-max 12 --trials 40 --seed 1 --out-samples " +
                       at("cs1.csv") + " --out-summary " + at("sm1.csv")) == 0,
          "conditioning exits 0");
    check(lineCount(dir / "sm1.csv") == 12, "summary has one row per n plus header");
    check(lineCount(dir / "cs1.csv") == 11 * 40 + 1, "samples CSV has n-range x trials rows");
    check(run(bin, "conditioning --n-min 2 --n-max 12 --trials 40 --seed 1 --out-samples " +
                       at("cs2.csv") + " --out-summary " + at("sm2.csv")) == 0,
          "conditioning rerun exits 0");
    check(slurp(dir / "cs1.csv") == slurp(dir / "cs2.csv"), "conditioning samples deterministic");
    check(slurp(dir / "sm1.csv") == slurp(dir / "sm2.csv"), "conditioning summary deterministic");

    if (failures > 0) {
        std::printf("%d CLI check(s) failed\n", failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
#endif
}
