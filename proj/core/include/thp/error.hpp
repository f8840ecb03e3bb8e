#pragma once

#include <stdexcept>
#include <string>

namespace thp {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, out-of-range timestamps, inconsistent dimensions.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// An operation that only supports the exponential kernel received another kind.
class UnsupportedKernel : public Error {
public:
    using Error::Error;
};

// The model cannot be evaluated, e.g. zero intensity at an observed cell.
class DegenerateModel : public Error {
public:
    using Error::Error;
};

// Simulation intensity exceeded the overflow guard (supercritical parameters).
class ExplosionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace thp
