#pragma once

#include <stdexcept>
#include <string>

namespace keiso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Line numbers are 1-based.
class ParseError : public Error {
public:
    enum class Kind { MalformedLine, OutOfRange, SelfLoop };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : Error(label(kind) + " at line " + std::to_string(line) + ": " + what),
          kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

    static std::string label(Kind k) {
        switch (k) {
        case Kind::MalformedLine: return "MalformedLine";
        case Kind::OutOfRange: return "OutOfRange";
        case Kind::SelfLoop: return "SelfLoop";
        }
        return "ParseError";
    }

private:
    Kind kind_;
    std::size_t line_;
};

/// A file could not be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

class InvalidStructure : public Error {
public:
    using Error::Error;
};

class NotARack : public Error {
public:
    using Error::Error;
};

class NotAKei : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class NotBijective : public Error {
public:
    using Error::Error;
};

class NotReplete : public Error {
public:
    NotReplete(std::size_t a, std::size_t b, const std::string& detail)
        : Error("NotReplete(" + std::to_string(a) + "," + std::to_string(b) + "): " + detail),
          a_(a), b_(b) {}
    std::size_t a() const noexcept { return a_; }
    std::size_t b() const noexcept { return b_; }

private:
    std::size_t a_, b_;
};

class WitnessMismatch : public Error {
public:
    using Error::Error;
};

class NotAGraphIso : public Error {
public:
    using Error::Error;
};

class InvalidIso : public Error {
public:
    using Error::Error;
};

/// A state the underlying mathematics rules out. Always an implementation bug.
class InternalContradiction : public Error {
public:
    using Error::Error;
};

} // namespace keiso
