#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphseg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input stream. `offset` is the byte position where decoding failed.
class ParseError : public Error {
 public:
  enum class Kind { kBadMagic, kBadHeader, kBadMaxval, kTruncated };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (non-root join, unsorted edges, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The requested tile count cannot be laid out on the image.
class GridError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphseg
