#pragma once

#include <stdexcept>
#include <string>

namespace qmur {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible sizes or an inconsistent tensor profile.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Matrix lacks a required structural property (square, Hermitian).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Iterative routine failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

class PositivityError : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

/// Requested problem size exceeds what a brute-force routine supports.
class UnsupportedScaleError : public Error {
public:
    using Error::Error;
};

/// Entropy of the zero operator and similar undefined inputs.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Malformed state, basis or config file.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace qmur
