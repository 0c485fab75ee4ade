#include "sidkit/hankel.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sidkit/errors.hpp"

namespace sidkit {

namespace {

std::string formatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parseField(const std::string& field, std::size_t lineNo) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError("non-numeric field '" + field + "'", lineNo);
    }
    return v;
}

}  // namespace

void Trajectory::validate() const {
    if (inputs.size() != outputs.size()) {
        throw std::invalid_argument("Trajectory: inputs and outputs must have equal length");
    }
    if (inputs.empty()) throw std::invalid_argument("Trajectory: at least one sample required");
    for (const Vector& u : inputs) {
        if (u.size() != inputDim || !u.allFinite()) {
            throw std::invalid_argument("Trajectory: bad input sample");
        }
    }
    for (const Vector& y : outputs) {
        if (y.size() != outputDim || !y.allFinite()) {
            throw std::invalid_argument("Trajectory: bad output sample");
        }
    }
}

Trajectory loadTrajectoryCsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path.string());

    std::string line;
    std::size_t lineNo = 0;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++lineNo;

    const std::vector<std::string> header = splitCsvLine(line);
    if (header.empty() || header[0] != "k") {
        throw ParseError("header must start with 'k'", lineNo);
    }
    int p = 0;
    int m = 0;
    std::size_t pos = 1;
    while (pos < header.size() && header[pos] == "u" + std::to_string(p + 1)) {
        ++p;
        ++pos;
    }
    while (pos < header.size() && header[pos] == "y" + std::to_string(m + 1)) {
        ++m;
        ++pos;
    }
    if (p == 0 || m == 0 || pos != header.size()) {
        throw ParseError("header must be k,u1,...,up,y1,...,ym", lineNo);
    }

    Trajectory traj;
    traj.inputDim = p;
    traj.outputDim = m;
    Index expectedK = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() && in.eof()) break;
        const std::vector<std::string> fields = splitCsvLine(line);
        if (fields.size() != static_cast<std::size_t>(1 + p + m)) {
            throw ParseError("expected " + std::to_string(1 + p + m) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineNo);
        }
        const double k = parseField(fields[0], lineNo);
        if (k != static_cast<double>(expectedK)) {
            throw ParseError("sample index must increase from 0 by 1", lineNo);
        }
        ++expectedK;
        Vector u(p);
        for (int c = 0; c < p; ++c) u(c) = parseField(fields[static_cast<std::size_t>(1 + c)], lineNo);
        Vector y(m);
        for (int c = 0; c < m; ++c) {
            y(c) = parseField(fields[static_cast<std::size_t>(1 + p + c)], lineNo);
        }
        traj.inputs.push_back(std::move(u));
        traj.outputs.push_back(std::move(y));
    }
    traj.validate();
    return traj;
}

void saveTrajectoryCsv(const Trajectory& traj, const std::filesystem::path& path) {
    traj.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trajectory file: " + path.string());
    out << "k";
    for (int c = 0; c < traj.inputDim; ++c) out << ",u" << (c + 1);
    for (int c = 0; c < traj.outputDim; ++c) out << ",y" << (c + 1);
    out << "\n";
    for (Index k = 0; k < traj.sampleCount(); ++k) {
        out << k;
        const Vector& u = traj.inputs[static_cast<std::size_t>(k)];
        const Vector& y = traj.outputs[static_cast<std::size_t>(k)];
        for (Index c = 0; c < u.size(); ++c) out << ',' << formatDouble(u(c));
        for (Index c = 0; c < y.size(); ++c) out << ',' << formatDouble(y(c));
        out << "\n";
    }
}

Matrix loadMatrixCsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = splitCsvLine(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) row.push_back(parseField(f, lineNo));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("ragged row", lineNo);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty matrix file", lineNo == 0 ? 1 : lineNo);
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
    }
    return m;
}

void saveMatrixCsv(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path.string());
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ',';
            out << formatDouble(m(r, c));
        }
        out << "\n";
    }
}

Index defaultColumnCount(Index sampleCount, Index i) {
    const Index j = sampleCount - 2 * i + 1;
    if (j < 1) throw std::out_of_range("defaultColumnCount: trajectory too short for i");
    return j;
}

Matrix blockHankel(const std::vector<Vector>& seq, Index first, Index last, Index j) {
    if (last < first) throw std::out_of_range("blockHankel: last < first");
    if (j < 1) throw std::out_of_range("blockHankel: need at least one column");
    if (seq.empty()) throw std::out_of_range("blockHankel: empty sequence");
    const Index need = last + j - 1;
    if (first < 0 || need >= static_cast<Index>(seq.size())) {
        throw std::out_of_range("blockHankel: sequence does not cover indices " +
                                std::to_string(first) + ".." + std::to_string(need));
    }
    const Index dim = seq.front().size();
    const Index blockRows = last - first + 1;
    Matrix h(blockRows * dim, j);
    for (Index r = 0; r < blockRows; ++r) {
        for (Index c = 0; c < j; ++c) {
            h.block(r * dim, c, dim, 1) = seq[static_cast<std::size_t>(first + r + c)];
        }
    }
    return h;
}

HankelSet buildHankelSet(const Trajectory& traj, const HankelConfig& cfg) {
    traj.validate();
    const Index i = cfg.i;
    const Index j = cfg.j;
    if (i < 1 || j < 1) throw std::out_of_range("buildHankelSet: need i >= 1 and j >= 1");
    if (2 * i + j - 1 > traj.sampleCount()) {
        throw std::out_of_range("buildHankelSet: trajectory has " +
                                std::to_string(traj.sampleCount()) + " samples, needs " +
                                std::to_string(2 * i + j - 1));
    }
    HankelSet h;
    h.i = i;
    h.j = j;
    h.p = traj.inputDim;
    h.m = traj.outputDim;
    h.Up = blockHankel(traj.inputs, 0, i - 1, j);
    h.Uf = blockHankel(traj.inputs, i, 2 * i - 1, j);
    h.Yp = blockHankel(traj.outputs, 0, i - 1, j);
    h.Yf = blockHankel(traj.outputs, i, 2 * i - 1, j);
    h.UpPlus = blockHankel(traj.inputs, 0, i, j);
    h.YpPlus = blockHankel(traj.outputs, 0, i, j);
    if (i >= 2) {
        h.UfMinus = blockHankel(traj.inputs, i + 1, 2 * i - 1, j);
        h.YfMinus = blockHankel(traj.outputs, i + 1, 2 * i - 1, j);
    } else {
        h.UfMinus = Matrix::Zero(0, j);
        h.YfMinus = Matrix::Zero(0, j);
    }
    h.Wp.resize(h.Up.rows() + h.Yp.rows(), j);
    h.Wp << h.Up, h.Yp;
    h.WpPlus.resize(h.UpPlus.rows() + h.YpPlus.rows(), j);
    h.WpPlus << h.UpPlus, h.YpPlus;
    h.Uii = blockHankel(traj.inputs, i, i, j);
    h.Yii = blockHankel(traj.outputs, i, i, j);
    return h;
}

bool persistencyOfExcitation(const HankelSet& h, double rankTol) {
    Matrix u02i(h.Up.rows() + h.Uf.rows(), h.j);
    u02i << h.Up, h.Uf;
    return rankWithTol(u02i, rankTol) == 2 * h.i * h.p;
}

}  // namespace sidkit
