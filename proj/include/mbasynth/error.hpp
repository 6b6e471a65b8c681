#ifndef MBASYNTH_ERROR_HPP
#define MBASYNTH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbasynth {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed RPN: stack underflow or a final depth other than one.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A variable index or input tuple that does not match the variable count.
class ArityError : public Error {
public:
    using Error::Error;
};

/// A count that does not fit in the 128-bit table.
class CapacityError : public Error {
public:
    CapacityError(std::string message, int size, int slot)
        : Error(std::move(message)), size_(size), slot_(slot) {}
    int size() const { return size_; }
    int slot() const { return slot_; }

private:
    int size_;
    int slot_;
};

/// Rank or size outside the range covered by a table.
class DomainError : public Error {
public:
    using Error::Error;
};

/// encode() on a commutative node whose left child is larger than its right.
class CanonicalityError : public Error {
public:
    CanonicalityError(std::string message, std::size_t node)
        : Error(std::move(message)), node_(node) {}
    /// Token index of the offending operator.
    std::size_t node() const { return node_; }

private:
    std::size_t node_;
};

class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t position)
        : Error(std::move(message)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Inconsistent engine/table/specification configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mbasynth

#endif
