#include "fundens/rewrite.hpp"

#include <cmath>
#include <limits>

namespace fundens {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_real_const(const ExprRef& e, double v) {
  return e->kind == ExprKind::Const && e->scalar.kind() == ValueKind::Real &&
         e->scalar.as_real() == v;
}

bool is_int_const(const ExprRef& e, long long v) {
  return e->kind == ExprKind::Const && e->scalar.kind() == ValueKind::Int &&
         e->scalar.as_int() == v;
}

bool is_bool_value(const ExprRef& e, bool b) {
  if (e->kind != (b ? ExprKind::Inl : ExprKind::Inr)) return false;
  return e->kids[0]->kind == ExprKind::Const &&
         e->kids[0]->scalar.kind() == ValueKind::Unit;
}

ExprRef with_kids(const ExprRef& e, std::vector<ExprRef> kids) {
  for (size_t i = 0; i < kids.size(); ++i)
    if (kids[i] != e->kids[i]) {
      auto n = std::make_shared<Expr>(*e);
      n->kids = std::move(kids);
      return n;
    }
  return e;
}

// one local rewrite step at the root; returns null when nothing applies
ExprRef step(const ExprRef& e) {
  switch (e->kind) {
    case ExprKind::Prim:
      switch (e->op) {
        case PrimOp::LogOp: {
          const ExprRef& a = e->kids[0];
          if (a->kind == ExprKind::Prim && a->op == PrimOp::ExpOp) return a->kids[0];
          if (is_real_const(a, 1.0)) return ast::realc(0.0);
          return nullptr;
        }
        case PrimOp::ExpOp: {
          const ExprRef& a = e->kids[0];
          if (a->kind == ExprKind::LogR && is_nonneg_density(a->kids[0]))
            return a->kids[0];
          return nullptr;
        }
        case PrimOp::AddReal:
          if (is_real_const(e->kids[0], 0.0)) return e->kids[1];
          if (is_real_const(e->kids[1], 0.0)) return e->kids[0];
          return nullptr;
        case PrimOp::AddInt:
          if (is_int_const(e->kids[0], 0)) return e->kids[1];
          if (is_int_const(e->kids[1], 0)) return e->kids[0];
          return nullptr;
        case PrimOp::MulReal:
          if (is_real_const(e->kids[0], 1.0)) return e->kids[1];
          if (is_real_const(e->kids[1], 1.0)) return e->kids[0];
          return nullptr;
        case PrimOp::MulInt:
          if (is_int_const(e->kids[0], 1)) return e->kids[1];
          if (is_int_const(e->kids[1], 1)) return e->kids[0];
          return nullptr;
        default: return nullptr;
      }
    case ExprKind::Integral:
      if (e->binders.empty()) return e->kids[0];
      return nullptr;
    case ExprKind::LogR: {
      const ExprRef& a = e->kids[0];
      if (a->kind == ExprKind::Prim && a->op == PrimOp::ExpOp) return a->kids[0];
      if (is_real_const(a, 1.0)) return ast::realc(0.0);
      return nullptr;
    }
    case ExprKind::Iverson:
      if (is_bool_value(e->kids[0], true)) return ast::realc(1.0);
      if (is_bool_value(e->kids[0], false)) return ast::realc(0.0);
      return nullptr;
    default: return nullptr;
  }
}

ExprRef rewrite(const ExprRef& e) {
  std::vector<ExprRef> kids;
  kids.reserve(e->kids.size());
  for (const auto& k : e->kids) kids.push_back(rewrite(k));
  ExprRef cur = with_kids(e, std::move(kids));
  for (;;) {
    ExprRef next = step(cur);
    if (!next) return cur;
    cur = rewrite(next);
  }
}

}  // namespace

ExprRef peephole(const ExprRef& e) { return rewrite(e); }

bool is_nonneg_density(const ExprRef& e) {
  switch (e->kind) {
    case ExprKind::Const:
      return e->scalar.kind() == ValueKind::Real && e->scalar.as_real() >= 0.0;
    case ExprKind::PdfOf:
    case ExprKind::Iverson:
    case ExprKind::IsL:
    case ExprKind::IsR: return true;
    case ExprKind::Prim:
      switch (e->op) {
        case PrimOp::AddReal:
        case PrimOp::MulReal:
          return is_nonneg_density(e->kids[0]) && is_nonneg_density(e->kids[1]);
        case PrimOp::ExpOp:
        case PrimOp::AbsOp: return true;
        default: return false;
      }
    case ExprKind::Let:
    case ExprKind::Plate: return is_nonneg_density(e->kids.back());
    case ExprKind::Match:
      return is_nonneg_density(e->kids[1]) && is_nonneg_density(e->kids[2]);
    case ExprKind::Integral: return is_nonneg_density(e->kids[0]);
    case ExprKind::ProdBy: return is_nonneg_density(e->kids[0]);
    default: return false;
  }
}

ExprRef log_space_body(const ExprRef& e) {
  switch (e->kind) {
    case ExprKind::Const:
      if (e->scalar.kind() == ValueKind::Real && e->scalar.as_real() >= 0.0)
        return ast::realc(e->scalar.as_real() > 0.0 ? std::log(e->scalar.as_real())
                                                    : kNegInf);
      break;
    case ExprKind::Prim:
      if (e->op == PrimOp::MulReal)
        return ast::add(log_space_body(e->kids[0]), log_space_body(e->kids[1]));
      if (e->op == PrimOp::AddReal)
        return ast::logSumExp({log_space_body(e->kids[0]), log_space_body(e->kids[1])});
      break;
    case ExprKind::PdfOf: return ast::logPdfOf(e->dist, e->kids[0], e->kids[1]);
    case ExprKind::Iverson:
      return ast::ifE(e->kids[0], ast::realc(0.0), ast::realc(kNegInf));
    case ExprKind::IsL:
      return ast::match(e->kids[0], "$_", ast::realc(0.0), "$_", ast::realc(kNegInf));
    case ExprKind::IsR:
      return ast::match(e->kids[0], "$_", ast::realc(kNegInf), "$_", ast::realc(0.0));
    case ExprKind::ProdBy: return ast::logProdBy(e->count, e->name, log_space_body(e->kids[0]));
    case ExprKind::Let: {
      auto n = std::make_shared<Expr>(*e);
      n->kids = {e->kids[0], log_space_body(e->kids[1])};
      return n;
    }
    case ExprKind::Match: {
      auto n = std::make_shared<Expr>(*e);
      n->kids = {e->kids[0], log_space_body(e->kids[1]), log_space_body(e->kids[2])};
      return n;
    }
    default: break;
  }
  return ast::logR(e);
}

}  // namespace fundens
