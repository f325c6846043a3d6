#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vizing {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Color = std::uint32_t;
using FanId = std::uint32_t;

/// Colors are 1..mu; 0 marks an uncolored edge.
inline constexpr Color kNoColor = 0;
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr FanId kNoFan = std::numeric_limits<FanId>::max();

/// Malformed external input (files, command-line values).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller broke a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed; always a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace vizing
