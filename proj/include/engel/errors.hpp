#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace engel {

/// Base class of all domain errors. Each error carries a stable
/// machine-readable code string ("NotEngel", "JacobiViolated", ...) that the
/// CLI and the Python bindings expose unchanged.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Growth vector of the distribution is not (2,3,4).
class NotEngelError : public Error {
public:
    explicit NotEngelError(const std::string& message) : Error("NotEngel", message) {}
};

/// The Levi-form kernel left the distribution (corrupt input data).
class KernelNotInDError : public Error {
public:
    explicit KernelNotInDError(const std::string& message) : Error("KernelNotInD", message) {}
};

/// No sign choice satisfies both orientation constraints (internal bug guard).
class OrientationConflictError : public Error {
public:
    explicit OrientationConflictError(const std::string& message)
        : Error("OrientationConflict", message) {}
};

/// Structure constants violate the Jacobi identity restrictions; carries the
/// six residuals in the canonical order.
class JacobiViolatedError : public Error {
public:
    JacobiViolatedError(const std::array<double, 6>& residuals, const std::string& message)
        : Error("JacobiViolated", message), residuals_(residuals) {}

    const std::array<double, 6>& residuals() const noexcept { return residuals_; }

private:
    std::array<double, 6> residuals_;
};

/// Constants satisfy the restriction system but match no known family.
class UnclassifiableError : public Error {
public:
    explicit UnclassifiableError(const std::string& message)
        : Error("Unclassifiable", message) {}
};

/// Operation requires type-III constants (T1 = T2 = T5 = 0).
class NotTypeIIIError : public Error {
public:
    explicit NotTypeIIIError(const std::string& message) : Error("NotTypeIII", message) {}
};

class InvalidParamsError : public Error {
public:
    explicit InvalidParamsError(const std::string& message)
        : Error("InvalidParams", message) {}
};

/// Adaptive step-size control underflowed the minimum step.
class StepRejectedError : public Error {
public:
    explicit StepRejectedError(const std::string& message) : Error("StepRejected", message) {}
};

/// Time argument outside the domain of a coefficient profile.
class OutOfDomainError : public Error {
public:
    explicit OutOfDomainError(const std::string& message) : Error("OutOfDomain", message) {}
};

/// File or stream could not be read/parsed (CLI-level error).
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("IoError", message) {}
};

}  // namespace engel
