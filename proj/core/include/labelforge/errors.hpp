#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace labelforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. offset is the byte position inside the parsed source.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("byte " + std::to_string(offset) + ": " + message), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Well-formed input that violates a semantic rule (invalid scene values,
// schema violations, bad option combinations).
class SemanticError : public Error {
public:
    using Error::Error;
};

class DuplicateTagError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

class MissingTagsError : public SemanticError {
public:
    explicit MissingTagsError(std::vector<std::string> tags);
    const std::vector<std::string>& tags() const { return tags_; }

private:
    std::vector<std::string> tags_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace labelforge
