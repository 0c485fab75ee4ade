#pragma once

#include <filesystem>
#include <vector>

#include "sidkit/linalg.hpp"

namespace sidkit {

/// Finite input/output sample sequence {(u_k, y_k) : 0 <= k <= s}.
struct Trajectory {
    int inputDim = 0;   ///< p
    int outputDim = 0;  ///< m
    std::vector<Vector> inputs;
    std::vector<Vector> outputs;

    /// Number of samples, s + 1.
    Index sampleCount() const { return static_cast<Index>(inputs.size()); }

    /// Throws std::invalid_argument on dimension mismatch or non-finite data.
    void validate() const;
};

/// Reads the trajectory CSV format: header `k,u1,...,up,y1,...,ym`, one sample
/// per row with k counting 0,1,2,... Throws ParseError with the offending
/// line number on malformed input.
Trajectory loadTrajectoryCsv(const std::filesystem::path& path);

/// Writes the trajectory CSV format with 17 significant digits, so that
/// save-then-load round-trips bit-exactly.
void saveTrajectoryCsv(const Trajectory& traj, const std::filesystem::path& path);

/// Dense numeric CSV (no header) for weighting matrices and similar inputs.
Matrix loadMatrixCsv(const std::filesystem::path& path);
void saveMatrixCsv(const Matrix& m, const std::filesystem::path& path);

/// User-defined block Hankel indices: i block rows (per past/future half),
/// j columns.
struct HankelConfig {
    Index i = 0;
    Index j = 0;
};

/// The j all data-using columns allow: j = sampleCount - 2i + 1.
Index defaultColumnCount(Index sampleCount, Index i);

/// Block Hankel matrix H with block(r, c) = seq[first + r + c],
/// r = 0..last-first, c = 0..j-1.
Matrix blockHankel(const std::vector<Vector>& seq, Index first, Index last, Index j);

/// All block Hankel partitions of one trajectory for given (i, j).
struct HankelSet {
    Index i = 0;
    Index j = 0;
    int p = 0;  ///< input dimension
    int m = 0;  ///< output dimension

    Matrix Up;       ///< U_{0,i-1,j}
    Matrix Uf;       ///< U_{i,2i-1,j}
    Matrix Yp;       ///< Y_{0,i-1,j}
    Matrix Yf;       ///< Y_{i,2i-1,j}
    Matrix UpPlus;   ///< U_{0,i,j}
    Matrix UfMinus;  ///< U_{i+1,2i-1,j}
    Matrix YpPlus;   ///< Y_{0,i,j}
    Matrix YfMinus;  ///< Y_{i+1,2i-1,j}
    Matrix Wp;       ///< [Up; Yp]
    Matrix WpPlus;   ///< [UpPlus; YpPlus]
    Matrix Uii;      ///< U_{i,i,j}, single block row
    Matrix Yii;      ///< Y_{i,i,j}
};

/// Builds every partition. Requires cfg.i >= 1, cfg.j >= 1 and
/// 2*cfg.i + cfg.j - 1 <= traj.sampleCount(); throws std::out_of_range
/// otherwise. For i == 1 the minus matrices are empty (0 rows).
HankelSet buildHankelSet(const Trajectory& traj, const HankelConfig& cfg);

/// Persistency-of-excitation diagnostic: rank of U_{0,2i-1,j} equals 2*i*p.
/// Advisory; identification may be attempted regardless.
bool persistencyOfExcitation(const HankelSet& h, double rankTol = kDefaultRankTol);

}  // namespace sidkit
