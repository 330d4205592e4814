#pragma once

#include <stdexcept>
#include <string>

namespace hyperrig {

/// Broad failure categories; the CLI maps them onto exit codes.
enum class ErrorKind {
  Configuration,  ///< invalid AlgebraParams or configuration bound exceeded
  Dimension,      ///< operands disagree on params or dimension
  Domain,         ///< carrier cannot represent the result (NaN, closure, zero norm)
  Unsupported,    ///< the algebra has no such operation (no inverse, no identity)
  Io,             ///< file or format problem
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Configuration, what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(ErrorKind::Dimension, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace hyperrig
