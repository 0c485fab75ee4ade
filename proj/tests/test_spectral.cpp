#include <doctest.h>

#include <cmath>
#include <random>

#include "sidkit/spectral.hpp"
#include "test_support.hpp"

using namespace sidkit;
using namespace sidkit::testing;

namespace {

Spectrum sorted(Spectrum s) {
    std::sort(s.begin(), s.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return s;
}

}  // namespace

TEST_CASE("eigenvalues of diagonal, rotation and companion matrices") {
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 1.0, -2.0, 0.5;
    const Spectrum sd = sorted(eigenvalues(d));
    CHECK(sd[0] == Complex(-2.0, 0.0));
    CHECK(sd[1] == Complex(0.5, 0.0));
    CHECK(sd[2] == Complex(1.0, 0.0));

    Matrix rot(2, 2);
    rot << 0, -1, 1, 0;
    const Spectrum sr = sorted(eigenvalues(rot));
    CHECK(std::abs(sr[0] - Complex(0.0, -1.0)) <= 1e-12);
    CHECK(std::abs(sr[1] - Complex(0.0, 1.0)) <= 1e-12);

    // companion of (x - 0.3)(x - 0.7) = x^2 - x + 0.21
    Matrix comp(2, 2);
    comp << 0, -0.21, 1, 1;
    const Spectrum sc = sorted(eigenvalues(comp));
    CHECK(std::abs(sc[0] - Complex(0.3, 0.0)) <= 1e-10);
    CHECK(std::abs(sc[1] - Complex(0.7, 0.0)) <= 1e-10);

    CHECK_THROWS_AS(eigenvalues(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("spectrumVariation exhaustive examples") {
    const Spectrum a{Complex(1), Complex(2)};
    CHECK(spectrumVariation(a, a) == 0.0);
    CHECK(spectrumVariation(a, {Complex(2), Complex(4)}) == doctest::Approx(2.0));
    CHECK(spectrumVariation(a, {Complex(1.1), Complex(2)}) == doctest::Approx(0.1));
    CHECK_THROWS_AS(spectrumVariation(a, Spectrum{Complex(1)}), std::invalid_argument);
}

TEST_CASE("hausdorffDistance symmetry and examples") {
    const Spectrum a{Complex(1), Complex(2)};
    const Spectrum b{Complex(2), Complex(4)};
    CHECK(hausdorffDistance(a, a) == 0.0);
    CHECK(hausdorffDistance(a, b) == doctest::Approx(2.0));
    CHECK(hausdorffDistance(b, a) == doctest::Approx(2.0));
}

TEST_CASE("hausdorffDistance behaves as a metric on random spectra") {
    std::mt19937_64 eng(41);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    const auto randomSpectrum = [&](int n) {
        Spectrum s;
        for (int k = 0; k < n; ++k) s.emplace_back(unit(eng), unit(eng));
        return s;
    };
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 5;
        const Spectrum a = randomSpectrum(n);
        const Spectrum b = randomSpectrum(n);
        const Spectrum c = randomSpectrum(n);
        const double ab = hausdorffDistance(a, b);
        const double bc = hausdorffDistance(b, c);
        const double ac = hausdorffDistance(a, c);
        CHECK(ab >= 0.0);
        CHECK(ab == hausdorffDistance(b, a));
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(hausdorffDistance(a, a) <= 1e-12);
        // one-sided variation never exceeds the symmetric distance
        CHECK(spectrumVariation(a, b) <= ab + 1e-15);
    }
}

TEST_CASE("elsnerBound closed forms") {
    std::mt19937_64 eng(42);
    const Matrix a = randomMatrix(3, 3, eng);
    CHECK(elsnerBound(a, a) == 0.0);

    // n = 1: bound collapses to |a - b| and is tight
    Matrix x(1, 1), y(1, 1);
    x << 0.4;
    y << -1.1;
    CHECK(elsnerBound(x, y) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(hausdorffDistance(x, y) == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(elsnerBound(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("elsnerBound dominates the Hausdorff distance on random pairs") {
    std::mt19937_64 eng(43);
    std::uniform_real_distribution<double> mag(-8.0, 0.5);
    for (int t = 0; t < 100; ++t) {
        const Index n = 1 + static_cast<Index>(t % 6);
        const Matrix a = randomMatrix(n, n, eng);
        const Matrix e = randomMatrix(n, n, eng);
        const Matrix b = a + e * std::pow(10.0, mag(eng));
        const double dh = hausdorffDistance(a, b);
        CHECK(dh <= elsnerBound(a, b) * (1.0 + 1e-12));
        CHECK(spectrumVariation(eigenvalues(a), eigenvalues(b)) <=
              spectrumVariationBound(a, b) * (1.0 + 1e-12));
    }
}
