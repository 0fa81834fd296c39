#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamgeom {

/// Malformed expression or system-file text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        offset_(offset), line_(line), column_(column) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t offset_, line_, column_;
};

/// A denominator vanished at an evaluation point.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hamgeom
