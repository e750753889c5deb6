#pragma once

#include <stdexcept>
#include <string>

namespace ncc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph too small for the requested statistic (fewer than three vertices).
struct DegenerateGraph : Error {
    using Error::Error;
};

// A statistic's denominator vanished (no wedges, no edges, no triangles where
// one is required), so the value is undefined rather than zero.
struct DegenerateStatistic : Error {
    using Error::Error;
};

// rho is undefined for this graph (wedge count is zero).
struct RhoUndefined : DegenerateStatistic {
    using DegenerateStatistic::DegenerateStatistic;
};

// Argument outside the function's domain.
struct OutOfRange : Error {
    using Error::Error;
};

// A parameterization that cannot be realized (e.g. an edge probability > 1).
struct InfeasibleParams : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_no(line) {}
    std::size_t line_no;
};

}  // namespace ncc
