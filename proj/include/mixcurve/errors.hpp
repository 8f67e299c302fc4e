#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixcurve {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed something the operation is not defined for.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class NotARoot : public Error {
public:
    using Error::Error;
};

/// Base of every failure that means "the numerics could not decide", as
/// opposed to bad input. The CLI maps these to exit code 2.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

class AdmissibilityViolation : public InconclusiveError {
public:
    using InconclusiveError::InconclusiveError;
};

class CertificationFailure : public InconclusiveError {
public:
    CertificationFailure(const std::string &what, double min_modulus, double max_step_phase, long samples)
        : InconclusiveError(what), min_modulus_(min_modulus), max_step_phase_(max_step_phase), samples_(samples) {}
    double min_modulus() const noexcept { return min_modulus_; }
    double max_step_phase() const noexcept { return max_step_phase_; }
    long samples() const noexcept { return samples_; }

private:
    double min_modulus_;
    double max_step_phase_;
    long samples_;
};

class NonIsolated : public InconclusiveError {
public:
    using InconclusiveError::InconclusiveError;
};

class RootFinderFailure : public InconclusiveError {
public:
    using InconclusiveError::InconclusiveError;
};

class BoundaryRoot : public InconclusiveError {
public:
    using InconclusiveError::InconclusiveError;
};

class TransversalityFailure : public InconclusiveError {
public:
    TransversalityFailure(const std::string &what, double determinant)
        : InconclusiveError(what), determinant_(determinant) {}
    double determinant() const noexcept { return determinant_; }

private:
    double determinant_;
};

class SphereHitsZero : public InconclusiveError {
public:
    SphereHitsZero(const std::string &what, double min_modulus)
        : InconclusiveError(what), min_modulus_(min_modulus) {}
    double min_modulus() const noexcept { return min_modulus_; }

private:
    double min_modulus_;
};

class NoConvergence : public InconclusiveError {
public:
    NoConvergence(const std::string &what, double residual)
        : InconclusiveError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace mixcurve
