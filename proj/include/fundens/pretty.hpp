#pragma once

#include <string>

#include "fundens/expr.hpp"

namespace fundens {

/// Deterministic text rendering of expressions; the surface used by golden
/// tests and `compile` output.
std::string pretty(const ExprRef& e);

std::string pretty_real(double v);
std::string pretty_op(PrimOp op);

}  // namespace fundens
