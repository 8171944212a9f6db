#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minc {

/// Base class of every error raised by the workbench.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in one of the concrete formula or file syntaxes.
/// `position()` is a 0-based byte offset into the input, or npos when the
/// error does not come from text.
class ParseError : public Error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ParseError(const std::string& message, std::size_t position = npos);

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Inclusion atom whose two sides have different lengths (or are empty).
class ArityError : public ParseError {
public:
  using ParseError::ParseError;
};

/// A JSON document that does not match the expected schema. The message
/// starts with the offending field path, e.g. `relations.R[2][1]`.
class SchemaError : public Error {
public:
  SchemaError(const std::string& path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

/// An operation was called on arguments that violate its precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

class UnknownRelation : public Error {
public:
  explicit UnknownRelation(const std::string& name);
};

/// Raised by operations that run out of their configured step budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

} // namespace minc
