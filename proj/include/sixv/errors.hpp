#pragma once

#include <stdexcept>
#include <string>

namespace sixv {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Delta == 1 lies outside all four parameterizations.
struct UnsupportedDeltaOne : DomainError {
    using DomainError::DomainError;
};

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeError : std::length_error {
    using std::length_error::length_error;
};

struct ConfluenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionError : std::runtime_error {
    PrecisionError(const std::string& what, int advised_bits)
        : std::runtime_error(what), advised_bits(advised_bits) {}
    int advised_bits;
};

struct ErgodicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sixv
