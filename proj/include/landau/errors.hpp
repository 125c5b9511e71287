#pragma once

#include <stdexcept>
#include <string>

namespace landau {

// Root of every error raised by the solver library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid grid, stepper or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Two objects built for different grids were combined.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

// The fine-grid quadrature of the kernel coefficients produced a non-real result.
class KernelQuadratureError : public Error {
public:
    using Error::Error;
};

// Cache or dump file is unreadable, truncated, corrupted, or describes another grid.
class FileFormatError : public Error {
public:
    using Error::Error;
};

// File header describes a different grid or kernel than the one requested.
class HeaderMismatchError : public FileFormatError {
public:
    using FileFormatError::FileFormatError;
};

// A synthesized real quantity carried an imaginary part above tolerance.
class SpectralRealnessError : public Error {
public:
    using Error::Error;
};

// Moments requested for a state with non-positive mass.
class DegenerateStateError : public Error {
public:
    using Error::Error;
};

// Reference distribution for the relative entropy is not strictly positive.
class InvalidReferenceError : public Error {
public:
    using Error::Error;
};

// Non-finite values appeared during time integration.
class BlowUpError : public Error {
public:
    BlowUpError(double t, int stage)
        : Error("non-finite state at t=" + std::to_string(t) + " in RK stage " +
                std::to_string(stage)),
          t_(t),
          stage_(stage) {}

    double time() const noexcept { return t_; }
    int stage() const noexcept { return stage_; }

private:
    double t_;
    int stage_;
};

}  // namespace landau
