#pragma once

#include <stdexcept>
#include <string>

namespace bcdi {

enum class ErrorKind {
    InvalidInput,
    NyquistViolation,
    InfeasibleGeometry,
    Numerical,
    Io,
};

/// Base exception for every recoverable failure raised by the library.
/// The kind is what the command-line driver maps onto its exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class NyquistViolation : public Error {
public:
    explicit NyquistViolation(const std::string& what) : Error(ErrorKind::NyquistViolation, what) {}
};

class InfeasibleGeometry : public Error {
public:
    explicit InfeasibleGeometry(const std::string& what) : Error(ErrorKind::InfeasibleGeometry, what) {}
};

class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InvalidInput(message);
    }
}

} // namespace bcdi
