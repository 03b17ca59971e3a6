#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

class RenyiError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Window and base measure disagree (dimension, domain, atom flags).
class DomainMismatchError : public RenyiError {
public:
    using RenyiError::RenyiError;
};

/// Density evaluated to NaN at a non-atom point.
class EvaluationError : public RenyiError {
public:
    using RenyiError::RenyiError;
};

/// A mass came back undetermined where a definite answer was required.
class UndeterminedError : public RenyiError {
public:
    using RenyiError::RenyiError;
};

enum class ElementaryFailure { ZeroMass, InfiniteMass, Undetermined };

inline const char* to_string(ElementaryFailure f) {
    switch (f) {
        case ElementaryFailure::ZeroMass: return "zero mass";
        case ElementaryFailure::InfiniteMass: return "infinite mass";
        case ElementaryFailure::Undetermined: return "undetermined mass";
    }
    return "?";
}

/// Conditioning window is not an elementary condition (mass not in (0, inf)).
class NotElementaryError : public RenyiError {
public:
    NotElementaryError(ElementaryFailure reason, const std::string& what)
        : RenyiError(what), reason(reason) {}
    ElementaryFailure reason;
};

/// Restriction to a null window (Eq.-style refusal: conditional undefined).
class ZeroMassError : public RenyiError {
public:
    using RenyiError::RenyiError;
};

/// KDE input with zero spread.
class DegenerateSamplesError : public RenyiError {
public:
    using RenyiError::RenyiError;
};

/// Offset alignment failed; message names the window pair.
class AlignmentError : public RenyiError {
public:
    using RenyiError::RenyiError;
};

} // namespace renyi
