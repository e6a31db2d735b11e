#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fundens/eval.hpp"
#include "fundens/expr.hpp"
#include "fundens/subst.hpp"
#include "fundens/typecheck.hpp"

namespace fundens {

enum class Space { Linear, Log };

enum class CompileErrorKind {
  NoDensity,        // no rule applies
  UnsupportedExpr,  // a rule exists in principle but the compiler restricts it
  NonInvertibleOp,  // change-of-variables side condition failed
  RealConstant,     // a real constant in density position: point mass
  TupleNotVars,     // tuple rule requires distinct variables
  VarNotRandom,     // marginal over a non-random variable
};

const char* compile_error_kind_name(CompileErrorKind k);

/// Compilation failure: the program has no density, or it has one the
/// compiler cannot derive. Carries the offending subterm and the rule that
/// was attempted.
class CompileError : public std::runtime_error {
public:
  CompileErrorKind kind;
  Span span;
  std::string subterm;
  std::string rule;

  CompileError(CompileErrorKind k, Span sp, std::string term, std::string attempted_rule,
               const std::string& msg);
};

/// A compiled density: fun bound_var -> body, with parameters free in the
/// body. Evaluable in linear or log space.
struct DensityFn {
  std::string bound_var;
  TypeRef bound_type;
  ExprRef body;
  TypeEnv params;
  Space space = Space::Linear;

  double value_at(const Value& v, const ValueEnv& param_env, const EvalConfig& cfg,
                  EvalDiag* diag = nullptr) const;
};

/// Probability context: the ordered random variables and pure definitions of
/// the current let-spine. Names are distinct; definitions never reference
/// later entries.
class ProbContext {
public:
  struct Entry {
    std::string name;
    TypeRef type;
    ExprRef defn;  // null for a random variable
  };

  void push_random(std::string name, TypeRef t);
  void push_det(std::string name, TypeRef t, ExprRef defn);

  const Entry* find(const std::string& name) const;
  bool is_random(const std::string& name) const;
  std::vector<std::string> rands() const;
  const std::vector<Entry>& entries() const { return entries_; }
  /// Idempotent substitution mapping each deterministic variable to its
  /// fully substituted definition.
  const Subst& sigma() const { return sigma_; }
  TypeEnv types() const;

private:
  std::vector<Entry> entries_;
  Subst sigma_;
};

struct CompileOptions {
  bool optimize = true;    // run the peephole pass
  bool share_lets = false; // emit definitions as let-bindings instead of substituting
};

/// The dens/marg judgments as deterministic partial functions. A fresh
/// instance has a reset name counter, so equal inputs compile to structurally
/// identical outputs.
class DensityCompiler {
public:
  DensityCompiler(TypeEnv params, CompileOptions opts);

  /// Density expression of the variables in `keep`, marginalizing out every
  /// other random variable of the context.
  ExprRef marg(const ProbContext& ctx, const std::set<std::string>& keep, const ExprRef& E);

  /// Density function body of M under context ctx and accumulated density E;
  /// `z` is the name the result binds.
  ExprRef dens(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
               const std::string& z);

  std::string fresh();
  long long fresh_mark() const { return next_fresh_; }
  void reset_fresh(long long mark) { next_fresh_ = mark; }
  TypeRef type_of(const ProbContext& ctx, const ExprRef& m) const;
  ExprRef apply_sigma(const ProbContext& ctx, const ExprRef& e) const;

  /// A plate index behaves as an int-typed parameter while its body compiles.
  void push_plate_index(const std::string& ix) { params_.bind(ix, Type::intT()); }
  void pop_plate_index() { params_.pop(); }

  const TypeEnv& params() const { return params_; }

private:
  TypeEnv params_;
  CompileOptions opts_;
  long long next_fresh_ = 0;
};

/// Compiles a program to its pdf: dens under the empty context with density
/// expression 1, peephole-optimized unless disabled. The result typechecks
/// as real under params, z : t (asserted).
DensityFn compile_pdf(const ExprRef& program, const TypeEnv& params,
                      const CompileOptions& opts = {});

/// Log-space compilation with let-sharing of definitions.
DensityFn compile_logpdf(const ExprRef& program, const TypeEnv& params,
                         const CompileOptions& opts = {});

/// Rewrites a linear-space density into log space.
DensityFn to_log_space(const DensityFn& f, bool optimize = true);

/// Human-readable diagnosis of a compilation failure.
std::string explain_failure(const CompileError& err);

}  // namespace fundens
