#pragma once

#include <stdexcept>
#include <string>

namespace discordlab {

// Which density-matrix invariant a state failed, and by how much.
struct StateViolation {
    enum class Kind { Trace, Hermiticity, Positivity };
    Kind kind = Kind::Trace;
    double deviation = 0.0;  // measured distance past the tolerance
};

class InvalidStateError : public std::runtime_error {
  public:
    InvalidStateError(const std::string& msg, StateViolation v)
        : std::runtime_error(msg), violation(v) {}
    StateViolation violation;
};

// Thrown when a matrix claimed to be X-shaped has support off the X pattern.
class NotXShapedError : public std::runtime_error {
  public:
    NotXShapedError(const std::string& msg, int row, int col, double magnitude)
        : std::runtime_error(msg), row(row), col(col), magnitude(magnitude) {}
    int row;
    int col;
    double magnitude;
};

}  // namespace discordlab
