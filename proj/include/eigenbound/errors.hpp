#pragma once

#include <stdexcept>
#include <string>

namespace eigenbound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix failed the pivot test during inversion.
class SingularError : public Error {
public:
    using Error::Error;
};

/// The leading coefficient A_m is singular; no upper bound applies.
class SingularLeading : public SingularError {
public:
    explicit SingularLeading(const std::string& what = "leading coefficient A_m is singular")
        : SingularError(what) {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NonFiniteInput : public Error {
public:
    using Error::Error;
};

/// Every lower coefficient vanishes, so the Cauchy equation has root 0.
class AllZeroTail : public Error {
public:
    using Error::Error;
};

class InvalidDegree : public Error {
public:
    using Error::Error;
};

class InvalidHolder : public Error {
public:
    using Error::Error;
};

class NonPositiveM : public Error {
public:
    using Error::Error;
};

/// The requested gap index does not describe a lacunary polynomial.
class InvalidGap : public Error {
public:
    using Error::Error;
};

class GenerationExhausted : public Error {
public:
    using Error::Error;
};

class EmptyReport : public Error {
public:
    using Error::Error;
};

/// Malformed polynomial file or report document.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace eigenbound
