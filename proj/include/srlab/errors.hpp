#pragma once

#include <stdexcept>
#include <string>

namespace srlab {

/// Malformed facet-list, edge-list or manifest input.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// An internal consistency check failed (e.g. a boundary map that does not square to zero).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace srlab
