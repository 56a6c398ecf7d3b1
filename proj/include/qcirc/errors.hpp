#pragma once

#include <stdexcept>
#include <string>

namespace qcirc {

// Base for all library errors. `code` is a stable machine-readable tag used by
// the CLI to pick exit codes (input errors vs numeric failures).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

struct SyntaxError : InputError {
  SyntaxError(int line, int col, const std::string& msg)
      : InputError("SyntaxError", "syntax error at line " + std::to_string(line) +
                                      ", col " + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

}  // namespace qcirc
