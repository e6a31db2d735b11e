#pragma once

#include <map>
#include <string>

#include "fundens/expr.hpp"

namespace fundens {

/// Finite map from variables to pure expressions.
using Subst = std::map<std::string, ExprRef>;

/// Capture-avoiding substitution of all free occurrences of dom(s).
/// Bound variables are renamed (x -> x$1, x$2, ...) where they would capture
/// a free variable of the range; the choice is deterministic.
/// Throws SubstError if a range expression contains random or fail.
ExprRef substitute(const ExprRef& e, const Subst& s);

/// substitute with a single binding.
ExprRef subst1(const ExprRef& e, const std::string& x, const ExprRef& replacement);

/// Renames one free variable without the purity requirement on ranges.
ExprRef rename_free(const ExprRef& e, const std::string& from, const std::string& to);

}  // namespace fundens
