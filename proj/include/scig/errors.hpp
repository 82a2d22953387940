#pragma once

#include <stdexcept>
#include <string>

namespace scig {

/// A process model violates its validity constraints (non-stationary VAR,
/// singular spectral factor, out-of-class parameters, ...).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric failure inside an otherwise well-posed computation
/// (non-finite entries, failed eigendecomposition, not-PSD input, divergent sum).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scig
