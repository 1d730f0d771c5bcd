#ifndef CTEX_ERROR_HPP
#define CTEX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ctex {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class EmptyImage : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

class NonConvexPolygon : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class MissingAsset : public Error {
public:
    using Error::Error;
};

} // namespace ctex

#endif // CTEX_ERROR_HPP
