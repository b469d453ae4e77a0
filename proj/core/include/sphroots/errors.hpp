#ifndef SPHROOTS_ERRORS_HPP
#define SPHROOTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sphroots {

/// The recursion reached a primitive pair (g, alpha) outside the primitive
/// table; this certifies that the input subgroup is not spherical.
struct NotSphericalError : std::runtime_error {
    explicit NotSphericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The module descriptor is outside the shipped registry coverage; this is
/// "don't know", not "not spherical".
struct UnknownModuleError : std::runtime_error {
    explicit UnknownModuleError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its stated precondition.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// The optimized solver produced overlapping per-block root sets.
struct DisjointnessViolation : std::logic_error {
    explicit DisjointnessViolation(const std::string& what) : std::logic_error(what) {}
};

/// Base and optimized solvers disagreed in mode `both`.
struct ModeDisagreement : std::logic_error {
    explicit ModeDisagreement(const std::string& what) : std::logic_error(what) {}
};

/// No theta chain from a class into the maximal part exists (invalid datum).
struct NoChainError : std::logic_error {
    explicit NoChainError(const std::string& what) : std::logic_error(what) {}
};

/// Input file error with a line diagnostic.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

} // namespace sphroots

#endif
