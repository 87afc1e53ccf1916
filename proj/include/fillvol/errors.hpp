#pragma once

#include <stdexcept>
#include <string>

namespace fillvol {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument for the mathematical domain (wrong ring, mixed degrees, ...).
struct DomainError : Error {
    using Error::Error;
};

// Malformed input file.
struct SchemaError : Error {
    using Error::Error;
};

// A loaded complex fails a structural check (d^2 != 0, dangling basis name).
struct ComplexError : Error {
    using Error::Error;
};

// Operation has no decidable answer for the given ring/norm combination.
struct UnsupportedError : Error {
    using Error::Error;
};

// A configured cap (word-length radius, enumeration budget, j-cap) was hit.
struct BudgetError : Error {
    using Error::Error;
};

// A computation needed cells outside the configured working region.
struct RegionError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace fillvol
