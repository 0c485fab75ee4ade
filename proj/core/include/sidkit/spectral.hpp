#pragma once

#include <complex>
#include <vector>

#include "sidkit/linalg.hpp"

namespace sidkit {

using Complex = std::complex<double>;

/// Eigenvalue multiset of a square matrix. For real input, non-real values
/// occur in conjugate pairs.
using Spectrum = std::vector<Complex>;

/// All n eigenvalues (with multiplicity) of a square finite matrix.
Spectrum eigenvalues(const Matrix& m);

/// Spectrum variation of `other` with respect to `ref`:
/// max over mu in other of min over lambda in ref of |lambda - mu|.
double spectrumVariation(const Spectrum& ref, const Spectrum& other);

/// Hausdorff distance between two equal-size spectra:
/// max(spectrumVariation(a,b), spectrumVariation(b,a)).
double hausdorffDistance(const Spectrum& a, const Spectrum& b);

/// Convenience overload on the matrices themselves.
double hausdorffDistance(const Matrix& a, const Matrix& b);

/// Elsner-type bound dominating the Hausdorff distance between spectra:
///   n^(1/2n) [(1+1/sqrt(n))^n - 1]^(1/n) mF^(1-1/n) ||A-B||_F^(1/n),
/// mF = max(||A||_F, ||B||_F). The same expression bounds the one-sided
/// spectrum variation sv_A(B); see spectrumVariationBound.
double elsnerBound(const Matrix& a, const Matrix& b);

/// One-sided variant: upper bound on spectrumVariation(lambda(A), lambda(B)).
/// Numerically identical to elsnerBound; kept as a named entry point.
double spectrumVariationBound(const Matrix& a, const Matrix& b);

}  // namespace sidkit
