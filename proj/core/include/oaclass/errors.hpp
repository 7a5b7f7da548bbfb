#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oaclass {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text does not have the required shape (length, characters, prefix).
class FormatError : public Error {
public:
    using Error::Error;
};

// ISSN mod-11 check digit mismatch.
class ChecksumError : public Error {
public:
    using Error::Error;
};

// Structured input could not be parsed; carries a 1-based line/row number
// when the source is line- or row-oriented (0 = not applicable).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// The same key is claimed by more than one registry entry.
class ConflictError : public Error {
public:
    using Error::Error;
};

// Repository kind token outside the known enumeration.
class UnknownKindError : public Error {
public:
    using Error::Error;
};

// Malformed XML document.
class XmlError : public Error {
public:
    using Error::Error;
};

// A single OAI-PMH record is unusable (e.g. missing mandatory header fields).
class RecordError : public Error {
public:
    using Error::Error;
};

// OAI-PMH protocol-level error response (badArgument, badResumptionToken, ...).
class ProtocolError : public Error {
public:
    ProtocolError(const std::string& code, const std::string& message)
        : Error("OAI-PMH error [" + code + "]: " + message), code_(code) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Network failure that persisted through the configured retries.
class TransportError : public Error {
public:
    using Error::Error;
};

// HTTP 401/403 from an endpoint.
class AuthError : public Error {
public:
    using Error::Error;
};

// group-by field name not provided by classification rows.
class UnknownFieldError : public Error {
public:
    using Error::Error;
};

// Caller passed a Full-OA-registered journal to the delayed detector.
class RegistryConflictError : public Error {
public:
    using Error::Error;
};

// Bad key or value in a configuration file.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem failure (open/read/write).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace oaclass
