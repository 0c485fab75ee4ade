#include "sidkit/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace sidkit {

double rhoConstant() {
    static const double rho = std::exp(M_PI * M_PI / 4.0);
    return rho;
}

namespace {

Index decayExponent(Index n, Index m) {
    return (n - 1) / (2 * m);  // floor for non-negative operands
}

double quantileSorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

double sigmaMinBoundGamma(Index n, Index m, double gammaNorm) {
    if (n < 1 || m < 1) throw std::invalid_argument("sigmaMinBoundGamma: n, m must be >= 1");
    if (gammaNorm < 0.0) throw std::invalid_argument("sigmaMinBoundGamma: norm must be >= 0");
    return 4.0 * std::pow(rhoConstant(), -static_cast<double>(decayExponent(n, m))) * gammaNorm;
}

double condLowerBoundGamma(Index n, Index m) {
    if (n < 1 || m < 1) throw std::invalid_argument("condLowerBoundGamma: n, m must be >= 1");
    return 0.25 * std::pow(rhoConstant(), static_cast<double>(decayExponent(n, m)));
}

Matrix KrylovStructured::assemble() const {
    Matrix x(n(), blocks * p());
    Matrix block = Jp;
    for (Index b = 0; b < blocks; ++b) {
        x.middleCols(b * p(), p()) = block;
        if (b + 1 < blocks) block = diagD.asDiagonal() * block;
    }
    return x;
}

KrylovStructured makeKrylovStructured(const Matrix& jp, const Matrix& d, Index blocks) {
    requireFinite(jp, "KrylovStructured J");
    requireFinite(d, "KrylovStructured D");
    if (d.rows() != d.cols() || d.rows() != jp.rows()) {
        throw std::invalid_argument("KrylovStructured: D must be n x n with n = rows(J)");
    }
    if (!d.isDiagonal(0.0)) {
        throw std::invalid_argument("KrylovStructured: unsupported structure, D must be diagonal");
    }
    if (jp.cols() > jp.rows()) {
        throw std::invalid_argument("KrylovStructured: block width p must satisfy p <= n");
    }
    if (blocks < 1) throw std::invalid_argument("KrylovStructured: need at least one block");
    return {jp, d.diagonal(), blocks};
}

KrylovBoundCheck verifyKrylovSigmaBound(const KrylovStructured& k) {
    const Matrix x = k.assemble();
    Eigen::BDCSVD<Matrix> svd(x);
    const Vector& s = svd.singularValues();
    KrylovBoundCheck out;
    out.normX = s(0);
    out.sigmaMin = s(s.size() - 1);
    // Odd block widths > 1 reduce to width p-1 by Cauchy interlacing; the
    // exponent is evaluated at the reduced width, the norm stays the full one.
    const Index p = k.p();
    const Index pEff = (p > 1 && p % 2 == 1) ? p - 1 : p;
    const Index minDim = std::min(k.n(), k.blocks * pEff);
    const auto exponent = static_cast<double>((minDim - 1) / (2 * pEff));
    out.bound = 4.0 * std::pow(rhoConstant(), -exponent) * out.normX;
    out.holds = out.sigmaMin <= out.bound;
    return out;
}

std::vector<ConditioningReport> runFig2Experiment(Index nMin, Index nMax, std::uint64_t trials,
                                                  std::uint64_t seed) {
    if (nMin < 2 || nMax < nMin) {
        throw std::invalid_argument("runFig2Experiment: need 2 <= nMin <= nMax");
    }
    if (trials < 1) throw std::invalid_argument("runFig2Experiment: trials must be >= 1");
    std::vector<ConditioningReport> reports;
    for (Index n = nMin; n <= nMax; ++n) {
        ConditioningReport rep;
        rep.n = n;
        rep.m = 1;
        rep.i = n;
        rep.trials = trials;
        rep.rho = rhoConstant();
        rep.theoreticalLowerBound = condLowerBoundGamma(n, 1);
        rep.condSamples.reserve(trials);
        rep.censoredFlags.reserve(trials);
        for (std::uint64_t t = 0; t < trials; ++t) {
            // per-trial engine: reproducible and order-independent
            std::mt19937_64 eng(seed + static_cast<std::uint64_t>(n) * 0x100000001ULL + t);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            Vector diag(n);
            bool distinct = false;
            while (!distinct) {
                for (Index k = 0; k < n; ++k) diag(k) = unit(eng);
                Vector sorted = diag;
                std::sort(sorted.data(), sorted.data() + sorted.size());
                distinct = true;
                for (Index k = 0; k + 1 < n; ++k) {
                    if (sorted(k + 1) - sorted(k) < 1e-6) distinct = false;
                }
            }
            Eigen::RowVectorXd c(n);
            for (Index k = 0; k < n; ++k) c(k) = unit(eng);

            Matrix gamma(n, n);  // i = n, m = 1
            Eigen::RowVectorXd row = c;
            for (Index k = 0; k < n; ++k) {
                gamma.row(k) = row;
                if (k + 1 < n) row = row.cwiseProduct(diag.transpose());
            }
            Eigen::BDCSVD<Matrix> svd(gamma);
            const Vector& s = svd.singularValues();
            const double smin = s(s.size() - 1);
            if (smin <= kDefaultRankTol * s(0)) {
                rep.condSamples.push_back(std::numeric_limits<double>::infinity());
                rep.censoredFlags.push_back(true);
            } else {
                rep.condSamples.push_back(s(0) / smin);
                rep.censoredFlags.push_back(false);
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

double fractionAboveBound(const ConditioningReport& report) {
    if (report.condSamples.empty()) return 0.0;
    std::size_t ok = 0;
    for (std::size_t k = 0; k < report.condSamples.size(); ++k) {
        if (report.censoredFlags[k] || report.condSamples[k] >= report.theoreticalLowerBound) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(report.condSamples.size());
}

double medianCond(const ConditioningReport& report) {
    std::vector<double> sorted = report.condSamples;
    std::sort(sorted.begin(), sorted.end());
    return quantileSorted(sorted, 0.5);
}

void writeConditioningSamplesCsv(const std::vector<ConditioningReport>& reports,
                                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write samples file: " + path.string());
    out << "n,trial,cond,lower_bound\n";
    char buf[40];
    for (const ConditioningReport& rep : reports) {
        for (std::size_t t = 0; t < rep.condSamples.size(); ++t) {
            out << rep.n << ',' << t << ',';
            if (rep.censoredFlags[t]) {
                out << "inf";
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", rep.condSamples[t]);
                out << buf;
            }
            std::snprintf(buf, sizeof(buf), "%.17g", rep.theoreticalLowerBound);
            out << ',' << buf << "\n";
        }
    }
}

void writeConditioningSummaryCsv(const std::vector<ConditioningReport>& reports,
                                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write summary file: " + path.string());
    out << "n,q05,q25,q50,q75,q95,lower_bound\n";
    char buf[40];
    for (const ConditioningReport& rep : reports) {
        std::vector<double> sorted = rep.condSamples;
        std::sort(sorted.begin(), sorted.end());
        out << rep.n;
        for (double q : {0.05, 0.25, 0.50, 0.75, 0.95}) {
            std::snprintf(buf, sizeof(buf), "%.17g", quantileSorted(sorted, q));
            out << ',' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g", rep.theoreticalLowerBound);
        out << ',' << buf << "\n";
    }
}

}  // namespace sidkit
