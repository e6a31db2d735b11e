#pragma once

#include <string>
#include <vector>

#include "fundens/env.hpp"
#include "fundens/expr.hpp"

namespace fundens {

/// Settings for the numeric integration engine behind target evaluation.
struct EvalConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdiv = 2000;
  double poisson_tail_tol = 1e-12;
};

/// Diagnostics raised during evaluation. A numerically non-convergent
/// integral evaluates to 0.0 (the semantics of an ill-defined integral) and
/// is flagged here, because silent zeros hide modeling bugs.
struct EvalDiag {
  bool nonconvergent = false;
  std::vector<std::string> notes;
};

/// Applies a primitive operation to values. Total: where the mathematical
/// operation is undefined the default value of the result type is returned
/// (x/0.0 = 0.0 = log of a non-positive number).
Value apply_prim(PrimOp op, const std::vector<Value>& args);

/// Applies any deterministic node (pairs, projections, injections, fromL/R,
/// isL/R, indexing, Iverson brackets) to its evaluated children.
Value apply_det_node(const Expr& e, const std::vector<Value>& kids);

/// Evaluates a (closed under env) target expression. Integrals over discrete
/// domains are finite or truncated sums under the counting measure; integrals
/// over real are adaptive Gauss-Kronrod quadrature with structure-derived
/// windows.
Value eval(const ExprRef& e, ValueEnv& env, const EvalConfig& cfg, EvalDiag* diag = nullptr);

double eval_real(const ExprRef& e, ValueEnv& env, const EvalConfig& cfg,
                 EvalDiag* diag = nullptr);

}  // namespace fundens
