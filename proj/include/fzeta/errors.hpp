#pragma once

#include <stdexcept>
#include <string>

namespace fzeta {

// Error taxonomy mirrored by the CLI exit codes: usage -> 2,
// numerical -> 3, validation -> 4.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace fzeta
