// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace pearsonchaos {

/// Base class for all library errors.
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in polynomial rings of different dimension.
class DimensionMismatch : public Error {
    using Error::Error;
};

/// A required moment of the invariant measure does not exist.
class MomentError : public Error {
    using Error::Error;
};

/// Requested spectral data outside the square-integrable range.
class SpectrumError : public Error {
    using Error::Error;
};

/// Chaos-related precondition failed (not chaotic, mixed eigenvalues, ...).
class ChaosError : public Error {
    using Error::Error;
};

/// Invalid or unclassifiable Pearson parameters.
class ClassError : public Error {
    using Error::Error;
};

/// Malformed descriptor / JSON / CSV input.
class IoError : public Error {
    using Error::Error;
};

}  // namespace pearsonchaos
