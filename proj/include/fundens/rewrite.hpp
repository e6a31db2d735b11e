#pragma once

#include "fundens/expr.hpp"

namespace fundens {

/// Semantics-preserving cleanup of target expressions, to a fixed point:
/// Log(Exp(e)) -> e; Exp(Log(e)) -> e when e is a density term known >= 0;
/// e+0 -> e; 0+e -> e; e*1 -> e; 1*e -> e; Log(1) -> 0; an integral with no
/// binders -> its body; Iverson brackets of boolean constants fold.
ExprRef peephole(const ExprRef& e);

/// Syntactic check that an expression only produces nonnegative reals
/// (density factors, Iverson brackets and their products, sums, integrals).
bool is_nonneg_density(const ExprRef& e);

/// Rewrites a linear-space density body into log space: products of factors
/// become sums of log factors, sums of branch densities become logsumexp,
/// Iverson factors become additive 0 / -inf guards, pdf factors evaluate
/// their logarithms in closed form.
ExprRef log_space_body(const ExprRef& e);

}  // namespace fundens
