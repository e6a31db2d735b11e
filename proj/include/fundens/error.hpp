#pragma once

#include <stdexcept>
#include <string>

#include "fundens/expr.hpp"

namespace fundens {

inline std::string at_span(Span sp) {
  if (!sp.known()) return "";
  return " at " + std::to_string(sp.line) + ":" + std::to_string(sp.col);
}

struct TypeError : std::runtime_error {
  Span span;
  explicit TypeError(const std::string& msg, Span sp = {})
      : std::runtime_error("type error" + at_span(sp) + ": " + msg), span(sp) {}
};

struct ParseError : std::runtime_error {
  Span span;
  explicit ParseError(const std::string& msg, Span sp = {})
      : std::runtime_error("parse error" + at_span(sp) + ": " + msg), span(sp) {}
};

struct SubstError : std::runtime_error {
  explicit SubstError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fundens
