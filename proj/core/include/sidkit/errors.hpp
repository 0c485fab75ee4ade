#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sidkit {

/// File could not be parsed; line() is the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Weighting matrices fail the admissibility conditions (W1 full rank,
/// rank[Wp] == rank[Wp W2]).
class WeightingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Random model generation could not satisfy its diagnostics.
class GenerationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem dimensions make the requested computation structurally impossible
/// (e.g. no left null space for the annihilator when m*i <= n).
class StructuralError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sidkit
