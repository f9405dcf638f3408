#ifndef FUZZYROUGH_ERRORS_HPP
#define FUZZYROUGH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzyrough {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad numeric, bad cell syntax, wrong field count).
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what), row(row), column(column) {}
  std::size_t row = 0;     // 1-based data/file row
  std::size_t column = 0;  // 1-based column
};

/// Structural problems with an input file (e.g. missing class column).
struct SchemaError : Error {
  using Error::Error;
};

/// A class cell is `*` or empty; class labels are mandatory.
struct MissingClassLabelError : ParseError {
  using ParseError::ParseError;
};

/// Input is well-formed but semantically unusable.
struct SemanticError : Error {
  using Error::Error;
};

/// A quantitative value has zero membership in every region of its attribute.
struct AllZeroMembershipError : SemanticError {
  AllZeroMembershipError(const std::string& what, std::string attribute, double value)
      : SemanticError(what), attribute(std::move(attribute)), value(value) {}
  std::string attribute;
  double value = 0.0;
};

/// An operation was asked to work on an equivalence class with no members.
struct EmptyClassError : SemanticError {
  using SemanticError::SemanticError;
};

}  // namespace fuzzyrough

#endif
