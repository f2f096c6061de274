#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcsbm {

using Index = std::ptrdiff_t;

inline constexpr int kUnassigned = -1;

// Exit codes: 2 usage or invalid input, 3 I/O, 4 numerical non-convergence.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what, 2) {}
};

class InvalidModel : public Error {
 public:
  explicit InvalidModel(const std::string& what) : Error(what, 2) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what, 3) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what, 4) {}
};

}  // namespace dcsbm
