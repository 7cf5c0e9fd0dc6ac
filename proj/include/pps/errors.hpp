#pragma once

#include <stdexcept>
#include <string>

namespace pps {

struct SyntaxError : std::runtime_error {
  int line;
  int column;
  SyntaxError(const std::string &msg, int l, int c)
      : std::runtime_error("syntax error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l), column(c) {}
};

struct ScopeError : std::runtime_error {
  explicit ScopeError(const std::string &msg)
      : std::runtime_error("scope error: " + msg) {}
};

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string &msg)
      : std::runtime_error("type error: " + msg) {}
};

// A shift body must be syntactically pure; the fix is to wrap it in a reset.
struct ImpureShiftBody : TypeError {
  explicit ImpureShiftBody(const std::string &body)
      : TypeError("shift body is not pure: " + body +
                  " (wrap the body in a reset)") {}
};

struct PromptTypeMismatch : TypeError {
  explicit PromptTypeMismatch(const std::string &msg)
      : TypeError("prompt type mismatch: " + msg) {}
};

struct UnsupportedNode : std::runtime_error {
  explicit UnsupportedNode(const std::string &msg)
      : std::runtime_error("unsupported derivation node: " + msg) {}
};

// Raised when a translated term does not check at the translated type.
// Firing on any input is a bug in the translator, never in the input.
struct TypePreservationViolation : std::runtime_error {
  explicit TypePreservationViolation(const std::string &msg)
      : std::runtime_error("type preservation violation: " + msg) {}
};

} // namespace pps
