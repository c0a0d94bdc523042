#pragma once

#include <stdexcept>
#include <string>

namespace pmenc {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad options, bad spec strings, bad thresholds. CLI maps these to exit 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Problems with the data itself (unreadable input, violated preconditions,
// insufficient samples). CLI maps these to exit 1.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Malformed input bytes; carries a position when one is known.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : DataError("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    explicit ParseError(const std::string& msg) : DataError(msg), line_(0), column_(0) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Filter predicate failed to parse or does not type-check against the data.
class PredicateError : public ConfigError {
public:
    explicit PredicateError(const std::string& msg) : ConfigError(msg) {}
};

} // namespace pmenc
