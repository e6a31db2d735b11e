#include "fundens/expr.hpp"

#include <cassert>

namespace fundens {

namespace ast {

namespace {
std::shared_ptr<Expr> node(ExprKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}
}  // namespace

ExprRef var(std::string name, Span sp) {
  auto e = node(ExprKind::Var);
  e->name = std::move(name);
  e->span = sp;
  return e;
}

ExprRef constant(Value v) {
  auto e = node(ExprKind::Const);
  e->scalar = std::move(v);
  return e;
}

ExprRef intc(long long n) { return constant(Value::intV(n)); }
ExprRef realc(double r) { return constant(Value::realV(r)); }
ExprRef unitc() { return constant(Value::unitV()); }

ExprRef boolc(bool b) {
  return b ? inl(unitc(), Type::unitT()) : inr(unitc(), Type::unitT());
}

ExprRef pair(ExprRef a, ExprRef b) {
  auto e = node(ExprKind::Pair);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

ExprRef tuple(const std::vector<ExprRef>& parts) {
  ExprRef e = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) e = pair(parts[i], e);
  return e;
}

ExprRef fst(ExprRef m) {
  auto e = node(ExprKind::Fst);
  e->kids = {std::move(m)};
  return e;
}

ExprRef snd(ExprRef m) {
  auto e = node(ExprKind::Snd);
  e->kids = {std::move(m)};
  return e;
}

ExprRef inl(ExprRef m, TypeRef right_type) {
  auto e = node(ExprKind::Inl);
  e->kids = {std::move(m)};
  e->type = std::move(right_type);
  return e;
}

ExprRef inr(ExprRef m, TypeRef left_type) {
  auto e = node(ExprKind::Inr);
  e->kids = {std::move(m)};
  e->type = std::move(left_type);
  return e;
}

ExprRef match(ExprRef m, std::string x1, ExprRef n1, std::string x2, ExprRef n2) {
  auto e = node(ExprKind::Match);
  e->kids = {std::move(m), std::move(n1), std::move(n2)};
  e->binders = {std::move(x1), std::move(x2)};
  return e;
}

ExprRef ifE(ExprRef cond, ExprRef thenE, ExprRef elseE) {
  return match(std::move(cond), "$_", std::move(thenE), "$_", std::move(elseE));
}

ExprRef let(std::string x, ExprRef m, ExprRef n) {
  auto e = node(ExprKind::Let);
  e->name = std::move(x);
  e->kids = {std::move(m), std::move(n)};
  return e;
}

ExprRef prim(PrimOp op, std::vector<ExprRef> args) {
  auto e = node(ExprKind::Prim);
  e->op = op;
  e->kids = std::move(args);
  return e;
}

ExprRef random(Dist d, ExprRef arg) {
  auto e = node(ExprKind::Random);
  e->dist = d;
  e->kids = {std::move(arg)};
  return e;
}

ExprRef fail(TypeRef t) {
  auto e = node(ExprKind::Fail);
  e->type = std::move(t);
  return e;
}

ExprRef fromL(ExprRef m, TypeRef result) {
  auto e = node(ExprKind::FromL);
  e->kids = {std::move(m)};
  e->type = std::move(result);
  return e;
}

ExprRef fromR(ExprRef m, TypeRef result) {
  auto e = node(ExprKind::FromR);
  e->kids = {std::move(m)};
  e->type = std::move(result);
  return e;
}

ExprRef isL(ExprRef m) {
  auto e = node(ExprKind::IsL);
  e->kids = {std::move(m)};
  return e;
}

ExprRef isR(ExprRef m) {
  auto e = node(ExprKind::IsR);
  e->kids = {std::move(m)};
  return e;
}

ExprRef plate(long long n, std::string ix, ExprRef body) {
  auto e = node(ExprKind::Plate);
  e->count = n;
  e->name = std::move(ix);
  e->kids = {std::move(body)};
  return e;
}

ExprRef idx(ExprRef tup, ExprRef index, long long arity, TypeRef elem) {
  auto e = node(ExprKind::Idx);
  e->kids = {std::move(tup), std::move(index)};
  e->count = arity;
  e->type = std::move(elem);
  return e;
}

ExprRef integral(std::vector<std::string> binders, std::vector<TypeRef> types, ExprRef body) {
  assert(binders.size() == types.size());
  auto e = node(ExprKind::Integral);
  e->binders = std::move(binders);
  e->types = std::move(types);
  e->kids = {std::move(body)};
  return e;
}

ExprRef pdfOf(Dist d, ExprRef arg, ExprRef point) {
  auto e = node(ExprKind::PdfOf);
  e->dist = d;
  e->kids = {std::move(arg), std::move(point)};
  return e;
}

ExprRef logPdfOf(Dist d, ExprRef arg, ExprRef point) {
  auto e = node(ExprKind::LogPdfOf);
  e->dist = d;
  e->kids = {std::move(arg), std::move(point)};
  return e;
}

ExprRef iverson(ExprRef pred) {
  auto e = node(ExprKind::Iverson);
  e->kids = {std::move(pred)};
  return e;
}

ExprRef prodBy(long long n, std::string ix, ExprRef body) {
  auto e = node(ExprKind::ProdBy);
  e->count = n;
  e->name = std::move(ix);
  e->kids = {std::move(body)};
  return e;
}

ExprRef logProdBy(long long n, std::string ix, ExprRef body) {
  auto e = node(ExprKind::LogProdBy);
  e->count = n;
  e->name = std::move(ix);
  e->kids = {std::move(body)};
  return e;
}

ExprRef logSumExp(std::vector<ExprRef> parts) {
  auto e = node(ExprKind::LogSumExp);
  e->kids = std::move(parts);
  return e;
}

ExprRef logR(ExprRef a) {
  auto e = node(ExprKind::LogR);
  e->kids = {std::move(a)};
  return e;
}

ExprRef add(ExprRef a, ExprRef b) { return prim(PrimOp::AddReal, {std::move(a), std::move(b)}); }
ExprRef sub(ExprRef a, ExprRef b) { return prim(PrimOp::SubReal, {std::move(a), std::move(b)}); }
ExprRef mul(ExprRef a, ExprRef b) { return prim(PrimOp::MulReal, {std::move(a), std::move(b)}); }
ExprRef divE(ExprRef a, ExprRef b) { return prim(PrimOp::DivReal, {std::move(a), std::move(b)}); }
ExprRef addI(ExprRef a, ExprRef b) { return prim(PrimOp::AddInt, {std::move(a), std::move(b)}); }
ExprRef expE(ExprRef a) { return prim(PrimOp::ExpOp, {std::move(a)}); }
ExprRef logE(ExprRef a) { return prim(PrimOp::LogOp, {std::move(a)}); }

}  // namespace ast

bool same_expr(const ExprRef& a, const ExprRef& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->binders != b->binders ||
      a->op != b->op || a->dist != b->dist || a->count != b->count)
    return false;
  if (!(a->scalar == b->scalar)) return false;
  if ((a->type != nullptr) != (b->type != nullptr)) return false;
  if (a->type && !same_type(a->type, b->type)) return false;
  if (a->types.size() != b->types.size()) return false;
  for (size_t i = 0; i < a->types.size(); ++i)
    if (!same_type(a->types[i], b->types[i])) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!same_expr(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {

void free_vars_into(const ExprRef& e, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e->kind) {
    case ExprKind::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case ExprKind::Let: {
      free_vars_into(e->kids[0], bound, out);
      bool fresh = bound.insert(e->name).second;
      free_vars_into(e->kids[1], bound, out);
      if (fresh) bound.erase(e->name);
      return;
    }
    case ExprKind::Match: {
      free_vars_into(e->kids[0], bound, out);
      for (int arm = 0; arm < 2; ++arm) {
        const std::string& x = e->binders[arm];
        bool fresh = bound.insert(x).second;
        free_vars_into(e->kids[arm + 1], bound, out);
        if (fresh) bound.erase(x);
      }
      return;
    }
    case ExprKind::Integral: {
      std::vector<std::string> added;
      for (const auto& x : e->binders)
        if (bound.insert(x).second) added.push_back(x);
      free_vars_into(e->kids[0], bound, out);
      for (const auto& x : added) bound.erase(x);
      return;
    }
    case ExprKind::Plate:
    case ExprKind::ProdBy:
    case ExprKind::LogProdBy: {
      bool fresh = bound.insert(e->name).second;
      free_vars_into(e->kids[0], bound, out);
      if (fresh) bound.erase(e->name);
      return;
    }
    default:
      for (const auto& k : e->kids) free_vars_into(k, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const ExprRef& e) {
  std::set<std::string> bound, out;
  free_vars_into(e, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const ExprRef& e) {
  return free_vars(e).count(x) > 0;
}

bool is_value_expr(const ExprRef& e) {
  switch (e->kind) {
    case ExprKind::Const: return true;
    case ExprKind::Pair: return is_value_expr(e->kids[0]) && is_value_expr(e->kids[1]);
    case ExprKind::Inl:
    case ExprKind::Inr: return is_value_expr(e->kids[0]);
    default: return false;
  }
}

Value value_of_expr(const ExprRef& e) {
  switch (e->kind) {
    case ExprKind::Const: return e->scalar;
    case ExprKind::Pair:
      return Value::pairV(value_of_expr(e->kids[0]), value_of_expr(e->kids[1]));
    case ExprKind::Inl: return Value::inlV(value_of_expr(e->kids[0]));
    case ExprKind::Inr: return Value::inrV(value_of_expr(e->kids[0]));
    default: assert(false && "not a value expression"); return Value::unitV();
  }
}

ExprRef expr_of_value(const Value& v, const TypeRef& t) {
  switch (v.kind()) {
    case ValueKind::Int:
    case ValueKind::Real:
    case ValueKind::Unit: return ast::constant(v);
    case ValueKind::Pair:
      return ast::pair(expr_of_value(v.first(), t ? t->left() : nullptr),
                       expr_of_value(v.second(), t ? t->right() : nullptr));
    case ValueKind::Inl:
      return ast::inl(expr_of_value(v.inner(), t ? t->left() : nullptr),
                      t ? t->right() : Type::unitT());
    case ValueKind::Inr:
      return ast::inr(expr_of_value(v.inner(), t ? t->right() : nullptr),
                      t ? t->left() : Type::unitT());
  }
  return ast::unitc();
}

}  // namespace fundens
