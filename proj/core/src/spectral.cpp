#include "sidkit/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sidkit {

Spectrum eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    requireFinite(m, "eigenvalues");
    if (m.rows() == 0) return {};
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalues: eigensolver failed to converge");
    }
    const auto& vals = solver.eigenvalues();
    Spectrum out(static_cast<std::size_t>(vals.size()));
    for (Index k = 0; k < vals.size(); ++k) out[static_cast<std::size_t>(k)] = vals(k);
    return out;
}

double spectrumVariation(const Spectrum& ref, const Spectrum& other) {
    if (ref.size() != other.size()) {
        throw std::invalid_argument("spectrumVariation: spectra must have equal size");
    }
    double worst = 0.0;
    for (const Complex& mu : other) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Complex& lambda : ref) {
            nearest = std::min(nearest, std::abs(lambda - mu));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

double hausdorffDistance(const Spectrum& a, const Spectrum& b) {
    return std::max(spectrumVariation(a, b), spectrumVariation(b, a));
}

double hausdorffDistance(const Matrix& a, const Matrix& b) {
    return hausdorffDistance(eigenvalues(a), eigenvalues(b));
}

double elsnerBound(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("elsnerBound: matrices must be square and the same size");
    }
    requireFinite(a, "elsnerBound(a)");
    requireFinite(b, "elsnerBound(b)");
    const auto n = static_cast<double>(a.rows());
    if (n == 0.0) return 0.0;
    const double mF = std::max(a.norm(), b.norm());
    const double diffF = (a - b).norm();
    const double coef =
        std::pow(n, 1.0 / (2.0 * n)) * std::pow(std::pow(1.0 + 1.0 / std::sqrt(n), n) - 1.0, 1.0 / n);
    return coef * std::pow(mF, 1.0 - 1.0 / n) * std::pow(diffF, 1.0 / n);
}

double spectrumVariationBound(const Matrix& a, const Matrix& b) { return elsnerBound(a, b); }

}  // namespace sidkit
