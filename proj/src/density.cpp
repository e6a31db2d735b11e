#include "fundens/density.hpp"

#include <algorithm>
#include <cassert>

#include "fundens/error.hpp"
#include "fundens/pretty.hpp"
#include "fundens/rewrite.hpp"

namespace fundens {

const char* compile_error_kind_name(CompileErrorKind k) {
  switch (k) {
    case CompileErrorKind::NoDensity: return "NoDensity";
    case CompileErrorKind::UnsupportedExpr: return "UnsupportedExpr";
    case CompileErrorKind::NonInvertibleOp: return "NonInvertibleOp";
    case CompileErrorKind::RealConstant: return "RealConstant";
    case CompileErrorKind::TupleNotVars: return "TupleNotVars";
    case CompileErrorKind::VarNotRandom: return "VarNotRandom";
  }
  return "?";
}

CompileError::CompileError(CompileErrorKind k, Span sp, std::string term,
                           std::string attempted_rule, const std::string& msg)
    : std::runtime_error(std::string(compile_error_kind_name(k)) + at_span(sp) + ": " + msg),
      kind(k),
      span(sp),
      subterm(std::move(term)),
      rule(std::move(attempted_rule)) {}

double DensityFn::value_at(const Value& v, const ValueEnv& param_env, const EvalConfig& cfg,
                           EvalDiag* diag) const {
  ValueEnv env = param_env;
  env.bind(bound_var, v);
  return eval_real(body, env, cfg, diag);
}

// ---------------------------------------------------------------------------
// Probability contexts
// ---------------------------------------------------------------------------

void ProbContext::push_random(std::string name, TypeRef t) {
  assert(!find(name));
  entries_.push_back({std::move(name), std::move(t), nullptr});
}

void ProbContext::push_det(std::string name, TypeRef t, ExprRef defn) {
  assert(!find(name));
  sigma_[name] = substitute(defn, sigma_);
  entries_.push_back({std::move(name), std::move(t), std::move(defn)});
}

const ProbContext::Entry* ProbContext::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

bool ProbContext::is_random(const std::string& name) const {
  const Entry* e = find(name);
  return e && !e->defn;
}

std::vector<std::string> ProbContext::rands() const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (!e.defn) out.push_back(e.name);
  return out;
}

TypeEnv ProbContext::types() const {
  TypeEnv env;
  for (const auto& e : entries_) env.bind(e.name, e.type);
  return env;
}

// ---------------------------------------------------------------------------
// Compiler
// ---------------------------------------------------------------------------

DensityCompiler::DensityCompiler(TypeEnv params, CompileOptions opts)
    : params_(std::move(params)), opts_(opts) {}

std::string DensityCompiler::fresh() { return "$" + std::to_string(next_fresh_++); }

TypeRef DensityCompiler::type_of(const ProbContext& ctx, const ExprRef& m) const {
  TypeEnv env = params_;
  for (const auto& e : ctx.entries()) env.bind(e.name, e.type);
  return typecheck_fun(m, env);
}

ExprRef DensityCompiler::apply_sigma(const ProbContext& ctx, const ExprRef& e) const {
  if (!opts_.share_lets) return substitute(e, ctx.sigma());
  // let-sharing: wrap e in the definitions it (transitively) mentions,
  // in context order
  std::set<std::string> needed = free_vars(e);
  const auto& entries = ctx.entries();
  std::vector<bool> used(entries.size(), false);
  for (size_t i = entries.size(); i-- > 0;) {
    const auto& ent = entries[i];
    if (!ent.defn || !needed.count(ent.name)) continue;
    used[i] = true;
    auto fv = free_vars(ent.defn);
    needed.insert(fv.begin(), fv.end());
  }
  ExprRef out = e;
  for (size_t i = entries.size(); i-- > 0;)
    if (used[i]) out = ast::let(entries[i].name, entries[i].defn, out);
  return out;
}

namespace {

[[noreturn]] void fail(CompileErrorKind kind, const ExprRef& at, const std::string& rule,
                       const std::string& msg) {
  throw CompileError(kind, at->span, pretty(at), rule, msg);
}

std::string unique_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "$" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

bool intersects(const std::vector<std::string>& xs, const std::set<std::string>& s) {
  for (const auto& x : xs)
    if (s.count(x)) return true;
  return false;
}

// Collects the components of a right-nested tuple expression.
void tuple_spine(const ExprRef& e, std::vector<ExprRef>& out) {
  if (e->kind == ExprKind::Pair) {
    out.push_back(e->kids[0]);
    tuple_spine(e->kids[1], out);
  } else {
    out.push_back(e);
  }
}

// Syntactic check that the density F of w gives negative values zero
// density: a Beta/Gamma pdf factor at w, a Uniform factor with literal
// lo >= 0, or an Iverson [w >= c] / [w > c] with literal c >= 0.
bool support_is_nonneg(const ExprRef& f, const std::string& w) {
  auto is_w = [&](const ExprRef& e) { return e->kind == ExprKind::Var && e->name == w; };
  switch (f->kind) {
    case ExprKind::Prim:
      if (f->op == PrimOp::MulReal)
        return support_is_nonneg(f->kids[0], w) || support_is_nonneg(f->kids[1], w);
      if (f->op == PrimOp::AddReal)
        return support_is_nonneg(f->kids[0], w) && support_is_nonneg(f->kids[1], w);
      return false;
    case ExprKind::Let:
      return f->name != w && support_is_nonneg(f->kids[1], w);
    case ExprKind::Match:
      return support_is_nonneg(f->kids[1], w) && support_is_nonneg(f->kids[2], w);
    case ExprKind::PdfOf: {
      if (!is_w(f->kids[1])) return false;
      if (f->dist == Dist::Beta || f->dist == Dist::Gamma) return true;
      if (f->dist == Dist::Uniform && f->kids[0]->kind == ExprKind::Pair) {
        const ExprRef& lo = f->kids[0]->kids[0];
        return lo->kind == ExprKind::Const && lo->scalar.kind() == ValueKind::Real &&
               lo->scalar.as_real() >= 0.0;
      }
      return false;
    }
    case ExprKind::Iverson: {
      const ExprRef& p = f->kids[0];
      if (p->kind != ExprKind::Prim || p->kids.size() != 2) return false;
      auto lit_ge0 = [](const ExprRef& e) {
        return e->kind == ExprKind::Const && e->scalar.kind() == ValueKind::Real &&
               e->scalar.as_real() >= 0.0;
      };
      if ((p->op == PrimOp::Ge || p->op == PrimOp::Gt) && is_w(p->kids[0]))
        return lit_ge0(p->kids[1]);
      if ((p->op == PrimOp::Le || p->op == PrimOp::Lt) && is_w(p->kids[1]))
        return lit_ge0(p->kids[0]);
      return false;
    }
    case ExprKind::Integral: return support_is_nonneg(f->kids[0], w);
    default: return false;
  }
}

struct Rules {
  DensityCompiler& c;

  std::set<std::string> avoid_for(const ProbContext& ctx, const ExprRef& E,
                                  const std::string& z) {
    std::set<std::string> avoid = free_vars(E);
    for (const auto& ent : ctx.entries()) avoid.insert(ent.name);
    for (const auto& [name, t] : c.params()) avoid.insert(name);
    avoid.insert(z);
    return avoid;
  }

  // (Constant)
  ExprRef rule_constant(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                        const std::string& z) {
    TypeRef t = c.type_of(ctx, M);
    if (!t->is_discrete()) {
      if (t->kind() == TypeKind::Real)
        fail(CompileErrorKind::RealConstant, M, "Constant",
             "a real constant has no density (point mass)");
      fail(CompileErrorKind::RealConstant, M, "Constant",
           "a constant of type " + t->str() + " has no density (point mass)");
    }
    ExprRef F = c.marg(ctx, {}, E);
    return ast::mul(F, ast::iverson(ast::prim(PrimOp::Eq, {ast::var(z), M})));
  }

  ExprRef rule_var(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                   const std::string& z) {
    const ProbContext::Entry* ent = ctx.find(M->name);
    if (!ent)
      fail(CompileErrorKind::NoDensity, M, "Var Det/Var Rnd",
           "'" + M->name +
               "' is not bound in the probability context (parameters are constants and "
               "have no density)");
    if (ent->defn) return c.dens(ctx, E, ent->defn, z);  // (Var Det)
    ExprRef F = c.marg(ctx, {M->name}, E);               // (Var Rnd)
    return rename_free(F, M->name, z);
  }

  // (Random Const) / (Random Rnd)
  ExprRef rule_random(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                      const std::string& z) {
    const ExprRef& arg = M->kids[0];
    bool is_const = false;
    if (is_pure(arg)) {
      ExprRef arg_s = substitute(arg, ctx.sigma());
      is_const = !intersects(ctx.rands(), free_vars(arg_s));
    }
    if (is_const) {
      ExprRef F = c.marg(ctx, {}, E);
      return ast::mul(F, c.apply_sigma(ctx, ast::pdfOf(M->dist, arg, ast::var(z))));
    }
    std::string w = c.fresh();
    ExprRef F = c.dens(ctx, E, arg, w);
    return ast::integral({w}, {dist_arg_type(M->dist)},
                         ast::mul(F, ast::pdfOf(M->dist, ast::var(w), ast::var(z))));
  }

  // (Tuple Var)
  ExprRef rule_tuple(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                     const std::string& z) {
    std::vector<ExprRef> parts;
    tuple_spine(M, parts);
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& p : parts) {
      if (p->kind != ExprKind::Var)
        fail(CompileErrorKind::TupleNotVars, M, "Tuple Var",
             "tuple components must be distinct variables; let-bind '" + pretty(p) +
                 "' first");
      if (!seen.insert(p->name).second)
        fail(CompileErrorKind::TupleNotVars, M, "Tuple Var",
             "tuple components must be distinct variables ('" + p->name + "' repeats)");
      names.push_back(p->name);
      if (!ctx.is_random(p->name))
        fail(CompileErrorKind::NoDensity, p, "Tuple Var",
             "'" + p->name + "' is not a random variable of the context");
    }
    ExprRef F = c.marg(ctx, std::set<std::string>(names.begin(), names.end()), E);
    // let x1,...,xk = z in F
    ExprRef body = F;
    // build from the last component backwards: xs_i = fst of the i-th spine tail
    std::vector<ExprRef> accessors;
    ExprRef spine = ast::var(z);
    for (size_t i = 0; i < names.size(); ++i) {
      if (i + 1 == names.size())
        accessors.push_back(spine);
      else {
        accessors.push_back(ast::fst(spine));
        spine = ast::snd(spine);
      }
    }
    for (size_t i = names.size(); i-- > 0;) body = ast::let(names[i], accessors[i], body);
    return body;
  }

  // (Tuple Proj L) / (Tuple Proj R)
  ExprRef rule_proj(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                    const std::string& z) {
    bool left = M->kind == ExprKind::Fst;
    TypeRef pt = c.type_of(ctx, M->kids[0]);
    std::string w = c.fresh();
    ExprRef F = c.dens(ctx, E, M->kids[0], w);
    std::string other = c.fresh();
    ExprRef pair = left ? ast::pair(ast::var(z), ast::var(other))
                        : ast::pair(ast::var(other), ast::var(z));
    TypeRef other_t = left ? pt->right() : pt->left();
    return ast::integral({other}, {other_t}, ast::let(w, pair, F));
  }

  // (Let Det) / (Let Rnd)
  ExprRef rule_let(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                   const std::string& z) {
    const ExprRef& bound = M->kids[0];
    ExprRef body = M->kids[1];
    std::set<std::string> avoid = avoid_for(ctx, E, z);
    auto bound_fv = free_vars(bound);
    avoid.insert(bound_fv.begin(), bound_fv.end());
    std::string x = unique_name(M->name, avoid);
    if (x != M->name) body = rename_free(body, M->name, x);
    TypeRef t = c.type_of(ctx, bound);
    if (is_pure(bound)) {
      ProbContext ctx2 = ctx;
      ctx2.push_det(x, t, bound);
      return c.dens(ctx2, E, body, z);
    }
    ProbContext empty;
    ExprRef F1 = c.dens(empty, ast::realc(1.0), bound, x);
    ProbContext ctx2 = ctx;
    ctx2.push_random(x, t);
    return c.dens(ctx2, ast::mul(E, F1), body, z);
  }

  // (Match Det) / (Match Rnd) / derived (If Det) / (If Rnd)
  ExprRef rule_match(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                     const std::string& z) {
    const ExprRef& scrut = M->kids[0];
    ExprRef n1 = M->kids[1], n2 = M->kids[2];
    TypeRef st = c.type_of(ctx, scrut);
    bool used1 = occurs_free(M->binders[0], n1);
    bool used2 = occurs_free(M->binders[1], n2);
    bool as_if = !used1 && !used2;
    if (is_pure(scrut)) {
      if (as_if) {  // (If Det)
        ExprRef F1 = c.dens(ctx, ast::mul(E, ast::isL(scrut)), n1, z);
        ExprRef F2 = c.dens(ctx, ast::mul(E, ast::isR(scrut)), n2, z);
        return ast::add(F1, F2);
      }
      // (Match Det)
      std::set<std::string> avoid = avoid_for(ctx, E, z);
      auto sfv = free_vars(scrut);
      avoid.insert(sfv.begin(), sfv.end());
      std::string x1 = unique_name(M->binders[0], avoid);
      if (x1 != M->binders[0]) n1 = rename_free(n1, M->binders[0], x1);
      std::string x2 = unique_name(M->binders[1], avoid);
      if (x2 != M->binders[1]) n2 = rename_free(n2, M->binders[1], x2);
      ProbContext cl = ctx;
      cl.push_det(x1, st->left(), ast::fromL(scrut, st->left()));
      ExprRef F1 = c.dens(cl, ast::mul(E, ast::isL(scrut)), n1, z);
      ProbContext cr = ctx;
      cr.push_det(x2, st->right(), ast::fromR(scrut, st->right()));
      ExprRef F2 = c.dens(cr, ast::mul(E, ast::isR(scrut)), n2, z);
      return ast::add(F1, F2);
    }
    std::string w = c.fresh();
    ProbContext empty;
    ExprRef F = c.dens(empty, ast::realc(1.0), scrut, w);
    if (as_if && st->is_bool()) {  // (If Rnd)
      ExprRef F1 = c.dens(ctx, ast::mul(E, ast::let(w, ast::boolc(true), F)), n1, z);
      ExprRef F2 = c.dens(ctx, ast::mul(E, ast::let(w, ast::boolc(false), F)), n2, z);
      return ast::add(F1, F2);
    }
    // (Match Rnd)
    std::set<std::string> avoid = avoid_for(ctx, E, z);
    avoid.insert(w);
    std::string x1 = unique_name(M->binders[0], avoid);
    if (x1 != M->binders[0]) n1 = rename_free(n1, M->binders[0], x1);
    std::string x2 = unique_name(M->binders[1], avoid);
    if (x2 != M->binders[1]) n2 = rename_free(n2, M->binders[1], x2);
    ProbContext cl = ctx;
    cl.push_random(x1, st->left());
    ExprRef e1 = ast::mul(E, ast::let(w, ast::inl(ast::var(x1), st->right()), F));
    ExprRef F1 = c.dens(cl, e1, n1, z);
    ProbContext cr = ctx;
    cr.push_random(x2, st->right());
    ExprRef e2 = ast::mul(E, ast::let(w, ast::inr(ast::var(x2), st->left()), F));
    ExprRef F2 = c.dens(cr, e2, n2, z);
    return ast::add(F1, F2);
  }

  // (Sum Con L) / (Sum Con R)
  ExprRef rule_sum_con(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                       const std::string& z) {
    bool left = M->kind == ExprKind::Inl;
    std::string inner = c.fresh();
    ExprRef F = c.dens(ctx, E, M->kids[0], inner);
    if (left) return ast::match(ast::var(z), inner, F, "$_", ast::realc(0.0));
    return ast::match(ast::var(z), "$_", ast::realc(0.0), inner, F);
  }

  // (fromL) / (fromR)
  ExprRef rule_from(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                    const std::string& z) {
    bool left = M->kind == ExprKind::FromL;
    bool in_ctx = false;
    for (const auto& ent : ctx.entries())
      if (ent.defn && same_expr(ent.defn, M)) in_ctx = true;
    if (!in_ctx)
      fail(CompileErrorKind::NoDensity, M, left ? "fromL" : "fromR",
           "fromL/fromR may only arise from match-bound variables");
    TypeRef st = c.type_of(ctx, M->kids[0]);
    std::string w = c.fresh();
    ExprRef F = c.dens(ctx, E, M->kids[0], w);
    ExprRef inj = left ? ast::inl(ast::var(z), st->right()) : ast::inr(ast::var(z), st->left());
    return ast::let(w, inj, F);
  }

  // (Discrete)
  ExprRef rule_discrete(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                        const std::string& z) {
    for (const auto& kid : M->kids)
      if (!is_pure(kid))
        fail(CompileErrorKind::NoDensity, M, "Discrete",
             "operands of a discrete operation must be pure; let-bind random "
             "subexpressions first");
    ExprRef m_sigma = substitute(M, ctx.sigma());
    auto fv = free_vars(m_sigma);
    std::vector<std::string> xs;
    std::vector<TypeRef> ts;
    for (const auto& e : ctx.entries())
      if (!e.defn && fv.count(e.name)) {
        xs.push_back(e.name);
        ts.push_back(e.type);
      }
    ExprRef F = c.marg(ctx, std::set<std::string>(xs.begin(), xs.end()), E);
    ExprRef pred = c.apply_sigma(ctx, ast::prim(PrimOp::Eq, {ast::var(z), M}));
    return ast::integral(xs, ts, ast::mul(F, ast::iverson(pred)));
  }

  // (Inverse), (Exp), (Log), (Scale), (Plus Det), (Plus Rnd)
  ExprRef rule_numeric(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                       const std::string& z) {
    auto is_real_lit = [](const ExprRef& e) {
      return e->kind == ExprKind::Const && e->scalar.kind() == ValueKind::Real;
    };
    auto is_ctx_const = [&](const ExprRef& e) {
      if (!is_pure(e)) return false;
      ExprRef s = substitute(e, ctx.sigma());
      return !intersects(ctx.rands(), free_vars(s));
    };
    switch (M->op) {
      case PrimOp::DivReal: {
        if (is_real_lit(M->kids[0]) && M->kids[0]->scalar.as_real() == 1.0) {
          // (Inverse)
          std::string w = c.fresh();
          ExprRef F = c.dens(ctx, E, M->kids[1], w);
          ExprRef inner = ast::let(w, ast::divE(ast::realc(1.0), ast::var(z)), F);
          return ast::mul(inner,
                          ast::divE(ast::realc(1.0), ast::mul(ast::var(z), ast::var(z))));
        }
        fail(CompileErrorKind::NoDensity, M, "Inverse",
             "only the reciprocal form 1.0 / M has a change-of-variables rule");
      }
      case PrimOp::ExpOp: {
        std::string w = c.fresh();
        ExprRef F = c.dens(ctx, E, M->kids[0], w);
        ExprRef then_branch = ast::mul(ast::let(w, ast::logE(ast::var(z)), F),
                                       ast::divE(ast::realc(1.0), ast::var(z)));
        return ast::ifE(ast::prim(PrimOp::Gt, {ast::var(z), ast::realc(0.0)}), then_branch,
                        ast::realc(0.0));
      }
      case PrimOp::LogOp: {
        std::string w = c.fresh();
        ExprRef F = c.dens(ctx, E, M->kids[0], w);
        if (!support_is_nonneg(F, w))
          fail(CompileErrorKind::NonInvertibleOp, M, "Log",
               "cannot establish that negative arguments to log have zero density");
        return ast::mul(ast::let(w, ast::expE(ast::var(z)), F), ast::expE(ast::var(z)));
      }
      case PrimOp::MulReal: {
        const ExprRef* lit = nullptr;
        const ExprRef* other = nullptr;
        if (is_real_lit(M->kids[0])) {
          lit = &M->kids[0];
          other = &M->kids[1];
        } else if (is_real_lit(M->kids[1])) {
          lit = &M->kids[1];
          other = &M->kids[0];
        }
        if (!lit)
          fail(CompileErrorKind::NoDensity, M, "Scale",
               "a product has a density only when one factor is a nonzero constant");
        double cval = (*lit)->scalar.as_real();
        if (cval == 0.0)
          fail(CompileErrorKind::NoDensity, M, "Scale",
               "scaling by zero concentrates all mass at 0 (point mass)");
        std::string w = c.fresh();
        ExprRef F = c.dens(ctx, E, *other, w);
        ExprRef inner = ast::let(w, ast::divE(ast::var(z), *lit), F);
        return ast::mul(inner,
                        ast::divE(ast::realc(1.0), ast::prim(PrimOp::AbsOp, {*lit})));
      }
      case PrimOp::AddReal: {
        if (is_ctx_const(M->kids[1])) {  // (Plus Det)
          std::string w = c.fresh();
          ExprRef F = c.dens(ctx, E, M->kids[0], w);
          return ast::let(w, ast::sub(ast::var(z), c.apply_sigma(ctx, M->kids[1])), F);
        }
        if (is_ctx_const(M->kids[0])) {  // (Plus Det), commuted
          std::string w = c.fresh();
          ExprRef F = c.dens(ctx, E, M->kids[1], w);
          return ast::let(w, ast::sub(ast::var(z), c.apply_sigma(ctx, M->kids[0])), F);
        }
        // (Plus Rnd)
        std::string w = c.fresh();
        ExprRef F = c.dens(ctx, E, ast::pair(M->kids[0], M->kids[1]), w);
        std::string w1 = c.fresh();
        ExprRef rebuilt =
            ast::pair(ast::var(w1), ast::sub(ast::var(z), ast::var(w1)));
        return ast::integral({w1}, {Type::realT()}, ast::let(w, rebuilt, F));
      }
      default:
        fail(CompileErrorKind::NoDensity, M, "numeric",
             std::string("no change-of-variables rule for operator '") + pretty_op(M->op) +
                 "'");
    }
  }

  // Derived iid-plate rule: the comprehension body is compiled once with the
  // index symbolic, and the per-element densities multiply into a prodBy over
  // the components of z. Falls back to unrolling when the body has no
  // index-uniform density derivation.
  ExprRef rule_plate(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                     const std::string& z) {
    if (is_pure(M->kids[0]))
      fail(CompileErrorKind::NoDensity, M, "Plate",
           "a pure comprehension is a constant and has no density");
    std::set<std::string> avoid = avoid_for(ctx, E, z);
    auto bfv = free_vars(M->kids[0]);
    avoid.insert(bfv.begin(), bfv.end());
    std::string ix = unique_name(M->name, avoid);
    ExprRef body = ix == M->name ? M->kids[0] : rename_free(M->kids[0], M->name, ix);
    std::string x = c.fresh();
    ProbContext empty;
    ExprRef F1;
    TypeRef elem_t;
    long long mark = c.fresh_mark();
    try {
      PlateIndexScope scope(c, ix);
      elem_t = c.type_of(empty, body);
      F1 = c.dens(empty, ast::realc(1.0), body, x);
    } catch (const CompileError&) {
      // fall back to unrolling the comprehension into let-bound draws
      c.reset_fresh(mark);
      return c.dens(ctx, E, unroll(M), z);
    }
    ExprRef per_elem = ast::let(x, ast::idx(ast::var(z), ast::var(ix), M->count, elem_t), F1);
    ExprRef prod = ast::prodBy(M->count, ix, per_elem);
    return c.marg(ctx, {}, ast::mul(E, prod));
  }

  struct PlateIndexScope {
    DensityCompiler& c;
    PlateIndexScope(DensityCompiler& comp, const std::string& ix) : c(comp) {
      c.push_plate_index(ix);
    }
    ~PlateIndexScope() { c.pop_plate_index(); }
  };

  ExprRef unroll(const ExprRef& plate) {
    std::vector<std::string> names;
    ExprRef tup;
    std::vector<ExprRef> vars;
    for (long long i = 0; i < plate->count; ++i) {
      names.push_back(c.fresh());
      vars.push_back(ast::var(names.back()));
    }
    tup = ast::tuple(vars);
    ExprRef out = tup;
    for (long long i = plate->count; i-- > 0;) {
      ExprRef elem = subst1(plate->kids[0], plate->name, ast::intc(i));
      out = ast::let(names[static_cast<size_t>(i)], elem, out);
    }
    return out;
  }
};

}  // namespace

ExprRef DensityCompiler::marg(const ProbContext& ctx, const std::set<std::string>& keep,
                              const ExprRef& E) {
  for (const auto& x : keep)
    if (!ctx.is_random(x))
      throw CompileError(CompileErrorKind::VarNotRandom, {}, x, "Marginal",
                         "'" + x + "' is not a random variable of the context");
  std::vector<std::string> ys;
  std::vector<TypeRef> ts;
  for (const auto& e : ctx.entries())
    if (!e.defn && !keep.count(e.name)) {
      ys.push_back(e.name);
      ts.push_back(e.type);
    }
  return ast::integral(ys, ts, apply_sigma(ctx, E));
}

ExprRef DensityCompiler::dens(const ProbContext& ctx, const ExprRef& E, const ExprRef& M,
                              const std::string& z) {
  Rules r{*this};
  if (is_value_expr(M)) return r.rule_constant(ctx, E, M, z);
  switch (M->kind) {
    case ExprKind::Var: return r.rule_var(ctx, E, M, z);
    case ExprKind::Fail: return ast::realc(0.0);  // (Fail)
    case ExprKind::Random: return r.rule_random(ctx, E, M, z);
    case ExprKind::Pair: return r.rule_tuple(ctx, E, M, z);
    case ExprKind::Fst:
    case ExprKind::Snd: return r.rule_proj(ctx, E, M, z);
    case ExprKind::Let: return r.rule_let(ctx, E, M, z);
    case ExprKind::Match: return r.rule_match(ctx, E, M, z);
    case ExprKind::Inl:
    case ExprKind::Inr: return r.rule_sum_con(ctx, E, M, z);
    case ExprKind::FromL:
    case ExprKind::FromR: return r.rule_from(ctx, E, M, z);
    case ExprKind::Plate: return r.rule_plate(ctx, E, M, z);
    case ExprKind::Prim: {
      TypeRef t = type_of(ctx, M);
      if (t->is_discrete()) return r.rule_discrete(ctx, E, M, z);
      return r.rule_numeric(ctx, E, M, z);
    }
    case ExprKind::Const:  // handled by is_value_expr above
    case ExprKind::Idx:
    case ExprKind::IsL:
    case ExprKind::IsR:
      fail(CompileErrorKind::NoDensity, M, "dens", "no density rule applies here");
    default:
      fail(CompileErrorKind::UnsupportedExpr, M, "dens",
           "not a source-language expression");
  }
}

DensityFn compile_pdf(const ExprRef& program, const TypeEnv& params,
                      const CompileOptions& opts) {
  TypeRef t = typecheck_fun(program, params);
  std::set<std::string> avoid = free_vars(program);
  for (const auto& [n, ty] : params) avoid.insert(n);
  std::string z = unique_name("z", avoid);
  DensityCompiler c(params, opts);
  ProbContext empty;
  ExprRef body = c.dens(empty, ast::realc(1.0), program, z);
  if (opts.optimize) body = peephole(body);
  TypeEnv check_env = params;
  check_env.bind(z, t);
  TypeRef bt = typecheck_target(body, check_env);
  if (bt->kind() != TypeKind::Real)
    throw TypeError("compiled density body is not real");  // type preservation guard
  return DensityFn{z, t, body, params, Space::Linear};
}

DensityFn to_log_space(const DensityFn& f, bool optimize) {
  if (f.space == Space::Log) return f;
  DensityFn out = f;
  out.body = log_space_body(f.body);
  if (optimize) out.body = peephole(out.body);
  out.space = Space::Log;
  TypeEnv check_env = out.params;
  check_env.bind(out.bound_var, out.bound_type);
  typecheck_target(out.body, check_env);
  return out;
}

DensityFn compile_logpdf(const ExprRef& program, const TypeEnv& params,
                         const CompileOptions& opts) {
  CompileOptions o = opts;
  o.share_lets = true;
  return to_log_space(compile_pdf(program, params, o), opts.optimize);
}

std::string explain_failure(const CompileError& err) {
  std::string out = std::string(compile_error_kind_name(err.kind)) + at_span(err.span) +
                    "\n  offending term: " + err.subterm + "\n  rule attempted: " + err.rule +
                    "\n  ";
  switch (err.kind) {
    case CompileErrorKind::RealConstant:
      out +=
          "a real-valued constant places nonzero probability on a single point, so the "
          "program has no density with respect to the Lebesgue measure. If the constant "
          "outcome is intended, model it with a discrete choice instead.";
      break;
    case CompileErrorKind::TupleNotVars:
      out +=
          "joint densities are only derived for tuples of distinct random variables; "
          "let-bind each component before pairing them (mixed pure/random tuples such as "
          "(0.0, random(Uniform(0.0, 1.0))) have no rule).";
      break;
    case CompileErrorKind::NonInvertibleOp:
      out +=
          "the change-of-variables rule needs the operation to be invertible wherever "
          "the argument has nonzero density, and the compiler could not establish that "
          "side condition.";
      break;
    case CompileErrorKind::VarNotRandom:
      out += "only random variables of the probability context can be marginalized.";
      break;
    default:
      out += std::string(err.what()) +
             "\n  The program may still have a pdf; the rule set is not complete.";
      break;
  }
  return out;
}

}  // namespace fundens
