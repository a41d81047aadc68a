#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bip {

// Raised on malformed concrete syntax. `offset` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Raised when an internal invariant is violated. Seeing one of these is a
// defect in this library, never a property of the input.
class LogicError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised when an enumeration request would produce more items than the
// configured ceiling allows.
class CorpusTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a rule enumeration grows past a hard safety bound (for example
// weakening over an extremely wide semicolon node). The search reports it as
// a resource-limited outcome rather than a failure of the input.
class EnumerationLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bip
