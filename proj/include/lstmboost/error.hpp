#pragma once

#include <stdexcept>
#include <string>

namespace lstmboost {

/// Failure categories. The numeric values double as process exit codes for
/// the command-line tool and as status codes of the C API.
enum class ErrorKind : int {
  Argument = 2,  // bad caller input or usage
  Data = 3,      // dataset, schema or model-compatibility problems
  Training = 4,  // training could not produce a usable model
  Io = 5,        // file system failures
  Internal = 6,  // broken invariant inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& what) : Error(ErrorKind::Argument, what) {}
};

/// Dimension mismatches between operands (a flavour of argument error).
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Argument, what) {}
};

struct DataError : Error {
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct TrainingError : Error {
  explicit TrainingError(const std::string& what) : Error(ErrorKind::Training, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

}  // namespace lstmboost
