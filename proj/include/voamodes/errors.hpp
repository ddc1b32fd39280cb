#pragma once

#include <stdexcept>
#include <string>

namespace voamodes {

// A requested vector would land above the configured weight/level cap.
class TruncationOverflow : public std::runtime_error {
 public:
  explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

// Residue taken of a series that still carries powers of log x.
class LogPresent : public std::runtime_error {
 public:
  explicit LogPresent(const std::string& what) : std::runtime_error(what) {}
};

class LogOrderExceeded : public std::runtime_error {
 public:
  explicit LogOrderExceeded(const std::string& what) : std::runtime_error(what) {}
};

class NonHomogeneous : public std::runtime_error {
 public:
  explicit NonHomogeneous(const std::string& what) : std::runtime_error(what) {}
};

// Lookup outside the generator grid stored in a MapTable.
class OutOfTable : public std::runtime_error {
 public:
  explicit OutOfTable(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace voamodes
