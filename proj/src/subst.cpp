#include "fundens/subst.hpp"

#include "fundens/error.hpp"
#include "fundens/typecheck.hpp"

namespace fundens {

namespace {

struct SubstPass {
  std::set<std::string> avoid;  // names that freshened binders must not collide with

  std::string freshen(const std::string& x) {
    for (int i = 1;; ++i) {
      std::string cand = x + "$" + std::to_string(i);
      if (!avoid.count(cand)) {
        avoid.insert(cand);
        return cand;
      }
    }
  }

  // Applies s to e. s maps only variables that are free in the current scope.
  ExprRef apply(const ExprRef& e, const Subst& s) {
    if (s.empty()) return e;
    switch (e->kind) {
      case ExprKind::Var: {
        auto it = s.find(e->name);
        return it == s.end() ? e : it->second;
      }
      case ExprKind::Const:
      case ExprKind::Fail:
        return e;
      case ExprKind::Let: {
        ExprRef m = apply(e->kids[0], s);
        auto [binder, body] = under_binder(e->name, e->kids[1], s);
        if (m == e->kids[0] && binder == e->name && body == e->kids[1]) return e;
        auto n = std::make_shared<Expr>(*e);
        n->name = binder;
        n->kids = {m, body};
        return n;
      }
      case ExprKind::Match: {
        ExprRef m = apply(e->kids[0], s);
        auto [b1, n1] = under_binder(e->binders[0], e->kids[1], s);
        auto [b2, n2] = under_binder(e->binders[1], e->kids[2], s);
        if (m == e->kids[0] && b1 == e->binders[0] && n1 == e->kids[1] &&
            b2 == e->binders[1] && n2 == e->kids[2])
          return e;
        auto n = std::make_shared<Expr>(*e);
        n->binders = {b1, b2};
        n->kids = {m, n1, n2};
        return n;
      }
      case ExprKind::Plate:
      case ExprKind::ProdBy:
      case ExprKind::LogProdBy: {
        auto [binder, body] = under_binder(e->name, e->kids[0], s);
        if (binder == e->name && body == e->kids[0]) return e;
        auto n = std::make_shared<Expr>(*e);
        n->name = binder;
        n->kids = {body};
        return n;
      }
      case ExprKind::Integral: {
        // Binders are introduced left to right; each scopes over the body.
        std::vector<std::string> binders = e->binders;
        ExprRef body = e->kids[0];
        Subst inner = s;
        bool renamed = false;
        for (auto& b : binders) {
          inner.erase(b);
          if (needs_rename(b, inner)) {
            std::string nb = freshen(b);
            body = rename_in(body, b, nb);
            b = nb;
            renamed = true;
          }
        }
        ExprRef new_body = apply(body, inner);
        if (!renamed && new_body == e->kids[0]) return e;
        auto n = std::make_shared<Expr>(*e);
        n->binders = std::move(binders);
        n->kids = {new_body};
        return n;
      }
      default: {
        bool changed = false;
        std::vector<ExprRef> kids;
        kids.reserve(e->kids.size());
        for (const auto& k : e->kids) {
          kids.push_back(apply(k, s));
          changed |= kids.back() != k;
        }
        if (!changed) return e;
        auto n = std::make_shared<Expr>(*e);
        n->kids = std::move(kids);
        return n;
      }
    }
  }

  bool needs_rename(const std::string& binder, const Subst& s) {
    for (const auto& [v, repl] : s)
      if (occurs_free(binder, repl)) return true;
    (void)s;
    return false;
  }

  ExprRef rename_in(const ExprRef& body, const std::string& from, const std::string& to) {
    Subst r{{from, ast::var(to)}};
    return apply(body, r);
  }

  std::pair<std::string, ExprRef> under_binder(const std::string& binder, const ExprRef& body,
                                               Subst s) {
    s.erase(binder);
    if (s.empty()) return {binder, body};
    std::string b = binder;
    ExprRef bd = body;
    if (needs_rename(binder, s)) {
      b = freshen(binder);
      bd = rename_in(body, binder, b);
    }
    return {b, apply(bd, s)};
  }
};

}  // namespace

ExprRef substitute(const ExprRef& e, const Subst& s) {
  if (s.empty()) return e;
  for (const auto& [v, repl] : s)
    if (!is_pure(repl))
      throw SubstError("substitution range for '" + v + "' is not pure");
  SubstPass pass;
  pass.avoid = free_vars(e);
  for (const auto& [v, repl] : s) {
    pass.avoid.insert(v);
    auto fv = free_vars(repl);
    pass.avoid.insert(fv.begin(), fv.end());
  }
  return pass.apply(e, s);
}

ExprRef subst1(const ExprRef& e, const std::string& x, const ExprRef& replacement) {
  return substitute(e, Subst{{x, replacement}});
}

ExprRef rename_free(const ExprRef& e, const std::string& from, const std::string& to) {
  SubstPass pass;
  pass.avoid = free_vars(e);
  pass.avoid.insert(to);
  Subst s{{from, ast::var(to)}};
  return pass.apply(e, s);
}

}  // namespace fundens
