#include "fundens/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "fundens/distributions.hpp"
#include "fundens/error.hpp"

namespace fundens {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPiHalf = 1.5707963267948966;
}  // namespace

Value apply_prim(PrimOp op, const std::vector<Value>& args) {
  auto r = [&](size_t i) { return args[i].as_real(); };
  auto i = [&](size_t k) { return args[k].as_int(); };
  auto wrap = [](unsigned long long v) { return static_cast<long long>(v); };
  switch (op) {
    case PrimOp::AddReal: return Value::realV(r(0) + r(1));
    case PrimOp::SubReal: return Value::realV(r(0) - r(1));
    case PrimOp::MulReal: return Value::realV(r(0) * r(1));
    case PrimOp::DivReal: return Value::realV(r(1) == 0.0 ? 0.0 : r(0) / r(1));
    case PrimOp::AddInt:
      return Value::intV(wrap(static_cast<unsigned long long>(i(0)) +
                              static_cast<unsigned long long>(i(1))));
    case PrimOp::SubInt:
      return Value::intV(wrap(static_cast<unsigned long long>(i(0)) -
                              static_cast<unsigned long long>(i(1))));
    case PrimOp::MulInt:
      return Value::intV(wrap(static_cast<unsigned long long>(i(0)) *
                              static_cast<unsigned long long>(i(1))));
    case PrimOp::Lt:
    case PrimOp::Le:
    case PrimOp::Gt:
    case PrimOp::Ge: {
      double a, b;
      if (args[0].kind() == ValueKind::Int) {
        a = static_cast<double>(i(0));
        b = static_cast<double>(i(1));
      } else {
        a = r(0);
        b = r(1);
      }
      bool res = op == PrimOp::Lt   ? a < b
                 : op == PrimOp::Le ? a <= b
                 : op == PrimOp::Gt ? a > b
                                    : a >= b;
      return Value::boolV(res);
    }
    case PrimOp::Eq: return Value::boolV(args[0] == args[1]);
    case PrimOp::And: return Value::boolV(args[0].is_true() && args[1].is_true());
    case PrimOp::Or: return Value::boolV(args[0].is_true() || args[1].is_true());
    case PrimOp::Not: return Value::boolV(!args[0].is_true());
    case PrimOp::ExpOp: return Value::realV(std::exp(r(0)));
    case PrimOp::LogOp: return Value::realV(r(0) > 0.0 ? std::log(r(0)) : 0.0);
    case PrimOp::AbsOp: return Value::realV(std::fabs(r(0)));
  }
  throw EvalError("unknown primitive");
}

Value apply_det_node(const Expr& e, const std::vector<Value>& kids) {
  switch (e.kind) {
    case ExprKind::Const: return e.scalar;
    case ExprKind::Pair: return Value::pairV(kids[0], kids[1]);
    case ExprKind::Fst: return kids[0].first();
    case ExprKind::Snd: return kids[0].second();
    case ExprKind::Inl: return Value::inlV(kids[0]);
    case ExprKind::Inr: return Value::inrV(kids[0]);
    case ExprKind::Prim: return apply_prim(e.op, kids);
    case ExprKind::FromL:
      return kids[0].is_inl() ? kids[0].inner() : default_value(e.type);
    case ExprKind::FromR:
      return !kids[0].is_inl() ? kids[0].inner() : default_value(e.type);
    case ExprKind::IsL: return Value::realV(kids[0].is_inl() ? 1.0 : 0.0);
    case ExprKind::IsR: return Value::realV(kids[0].is_inl() ? 0.0 : 1.0);
    case ExprKind::Iverson: return Value::realV(kids[0].is_true() ? 1.0 : 0.0);
    case ExprKind::Idx: {
      long long at = kids[1].as_int();
      if (at < 0 || at >= e.count) return default_value(e.type);
      const Value* cur = &kids[0];
      for (long long j = 0; j < at; ++j) cur = &cur->second();
      return at == e.count - 1 ? *cur : cur->first();
    }
    case ExprKind::LogR: return Value::realV(std::log(kids[0].as_real()));
    default: throw EvalError("node is not deterministic");
  }
}

namespace {

// ---------------------------------------------------------------------------
// 15-point Gauss-Kronrod rule (QUADPACK abscissae and weights).
// ---------------------------------------------------------------------------

const double kXgk[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                        0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                        0.2077849550078985, 0.0};
const double kWgk[8] = {0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
                        0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
                        0.2044329400752989, 0.2094821410847278};
const double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                       0.4179591836734694};

template <class F>
void gk15(const F& f, double a, double b, double& result, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double f1 = f(c - h * kXgk[j]);
    double f2 = f(c + h * kXgk[j]);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  result = resk * h;
  err = std::fabs((resk - resg) * h);
}

struct Segment {
  double a, b, value, err;
};

template <class F>
double adaptive_gk(const F& f, std::vector<Segment>& segs, const EvalConfig& cfg,
                   bool& converged, int* budget) {
  converged = true;
  for (;;) {
    double total = 0, toterr = 0;
    size_t worst = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      toterr += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
    if (toterr <= tol) return total;
    if (*budget <= 0) {
      converged = false;
      return total;
    }
    Segment& w = segs[worst];
    double mid = 0.5 * (w.a + w.b);
    if (!(mid > w.a && mid < w.b)) {  // exhausted at double precision
      w.err = 0.0;
      continue;
    }
    --*budget;
    Segment left{w.a, mid, 0, 0}, right{mid, w.b, 0, 0};
    gk15(f, left.a, left.b, left.value, left.err);
    gk15(f, right.a, right.b, right.value, right.err);
    w = left;
    segs.push_back(right);
  }
}

// Seeds the adaptive scheme with several panels so narrow features of
// transformed infinite-range integrands are not missed by one coarse rule.
template <class F>
double seeded_adaptive(const F& f, double a, double b, int seeds, const EvalConfig& cfg,
                       bool& converged, int* budget) {
  std::vector<Segment> segs;
  segs.reserve(static_cast<size_t>(seeds));
  double h = (b - a) / seeds;
  for (int i = 0; i < seeds; ++i) {
    Segment s{a + i * h, a + (i + 1) * h, 0, 0};
    gk15(f, s.a, s.b, s.value, s.err);
    segs.push_back(s);
  }
  return adaptive_gk(f, segs, cfg, converged, budget);
}

// ---------------------------------------------------------------------------
// Support inference for integration variables.
// ---------------------------------------------------------------------------

struct Window {
  double lo = -kInf, hi = kInf;
  bool empty() const { return lo > hi; }
};

Window intersect(Window a, Window b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Window unite(Window a, Window b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

struct Evaluator;
Value eval_node(Evaluator& ev, const ExprRef& e);

struct Evaluator {
  const EvalConfig& cfg;
  ValueEnv& env;
  EvalDiag* diag;

  void flag(const std::string& note) {
    if (!diag) return;
    diag->nonconvergent = true;
    if (diag->notes.size() < 16) diag->notes.push_back(note);
  }
};

double eval_real_node(Evaluator& ev, const ExprRef& e) {
  Value v = eval_node(ev, e);
  if (v.kind() != ValueKind::Real) throw EvalError("expected a real value");
  return v.as_real();
}

// Resolves an expression to a canonical projection chain over variables,
// unfolding pure let aliases and projections of literal pairs.
ExprRef resolve_path(const ExprRef& e, const std::map<std::string, ExprRef>& defs, int depth) {
  if (depth > 64) return e;
  switch (e->kind) {
    case ExprKind::Var: {
      auto it = defs.find(e->name);
      return it == defs.end() ? e : resolve_path(it->second, defs, depth + 1);
    }
    case ExprKind::Fst: {
      ExprRef r = resolve_path(e->kids[0], defs, depth + 1);
      if (r->kind == ExprKind::Pair) return resolve_path(r->kids[0], defs, depth + 1);
      return r == e->kids[0] ? e : ast::fst(r);
    }
    case ExprKind::Snd: {
      ExprRef r = resolve_path(e->kids[0], defs, depth + 1);
      if (r->kind == ExprKind::Pair) return resolve_path(r->kids[1], defs, depth + 1);
      return r == e->kids[0] ? e : ast::snd(r);
    }
    default: return e;
  }
}

/// Walks the multiplicative structure of an integrand looking at one
/// integration variable (or one component of a product-typed binder):
/// density factors whose point is the variable bound its support, a Gaussian
/// factor whose mean is the variable gives a window around the point, and
/// Iverson comparisons give half-lines. Sums and match arms take unions.
struct SupportScan {
  Evaluator& ev;
  ExprRef target;
  std::map<std::string, ExprRef> defs;  // let-bound definitions in scope

  bool is_target(const ExprRef& e) { return same_expr(resolve_path(e, defs, 0), target); }

  bool bindable(const ExprRef& e, int depth) {
    if (depth > 64) return false;
    for (const auto& v : free_vars(e)) {
      if (ev.env.lookup(v)) continue;
      auto it = defs.find(v);
      if (it == defs.end() || !bindable(it->second, depth + 1)) return false;
    }
    return true;
  }

  // Evaluates e with any let-bound definitions it mentions bound first.
  std::optional<Value> try_eval(const ExprRef& e) {
    if (!bindable(e, 0)) return std::nullopt;
    size_t base = ev.env.size();
    Value out;
    bool ok = bind_and_eval(e, 0, out);
    ev.env.truncate(base);
    if (!ok) return std::nullopt;
    return out;
  }

  bool bind_and_eval(const ExprRef& e, int depth, Value& out) {
    if (depth > 64) return false;
    for (const auto& v : free_vars(e)) {
      if (ev.env.lookup(v)) continue;
      auto it = defs.find(v);
      if (it == defs.end()) return false;
      Value dv;
      if (!bind_and_eval(it->second, depth + 1, dv)) return false;
      ev.env.bind(v, std::move(dv));
    }
    out = eval_node(ev, e);
    return true;
  }

  std::optional<double> try_eval_real(const ExprRef& e) {
    auto v = try_eval(e);
    if (!v || v->kind() != ValueKind::Real) return std::nullopt;
    return v->as_real();
  }

  Window factor_window(const ExprRef& f) {
    const ExprRef& arg = f->kids[0];
    const ExprRef& point = f->kids[1];
    if (is_target(point)) {
      double p0 = 0, p1 = 0;
      bool have = false;
      if (arg->kind == ExprKind::Pair) {
        auto a = try_eval_real(arg->kids[0]);
        auto b = try_eval_real(arg->kids[1]);
        if (a && b) {
          p0 = *a;
          p1 = *b;
          have = true;
        }
      } else {
        auto v = try_eval(arg);
        if (v && v->kind() == ValueKind::Pair) {
          p0 = v->first().as_real();
          p1 = v->second().as_real();
          have = true;
        }
      }
      switch (f->dist) {
        case Dist::Gaussian:
          if (have && p1 > 0.0) return {p0 - 10.0 * p1, p0 + 10.0 * p1};
          return {};
        case Dist::Uniform:
          if (have && p0 < p1) return {p0, p1};
          return {};
        case Dist::Beta: return {0.0, 1.0};
        case Dist::Gamma: {
          if (!have || !(p0 > 0.0) || !(p1 > 0.0)) return {0.0, kInf};
          return {0.0, p1 * (p0 + 12.0 * std::sqrt(p0) + 20.0)};
        }
        default: return {};
      }
    }
    if (f->dist == Dist::Gaussian && arg->kind == ExprKind::Pair && is_target(arg->kids[0])) {
      auto s = try_eval_real(arg->kids[1]);
      auto z = try_eval_real(point);
      if (s && z && *s > 0.0) return {*z - 10.0 * *s, *z + 10.0 * *s};
    }
    return {};
  }

  Window iverson_window(const ExprRef& pred) {
    if (pred->kind != ExprKind::Prim || pred->kids.size() != 2) return {};
    auto bound = [&](bool var_on_left, const ExprRef& other) -> Window {
      auto v = try_eval_real(other);
      if (!v || !std::isfinite(*v)) return {};
      switch (pred->op) {
        case PrimOp::Ge:
        case PrimOp::Gt: return var_on_left ? Window{*v, kInf} : Window{-kInf, *v};
        case PrimOp::Le:
        case PrimOp::Lt: return var_on_left ? Window{-kInf, *v} : Window{*v, kInf};
        default: return {};
      }
    };
    if (is_target(pred->kids[0])) return bound(true, pred->kids[1]);
    if (is_target(pred->kids[1])) return bound(false, pred->kids[0]);
    return {};
  }

  Window scan(const ExprRef& e) {
    switch (e->kind) {
      case ExprKind::Prim:
        if (e->op == PrimOp::MulReal)
          return intersect(scan(e->kids[0]), scan(e->kids[1]));
        if (e->op == PrimOp::AddReal)
          return unite(scan(e->kids[0]), scan(e->kids[1]));
        return {};
      case ExprKind::Let: {
        auto it = defs.find(e->name);
        ExprRef saved = it == defs.end() ? nullptr : it->second;
        defs[e->name] = e->kids[0];
        Window w = scan(e->kids[1]);
        if (saved)
          defs[e->name] = saved;
        else
          defs.erase(e->name);
        return w;
      }
      case ExprKind::PdfOf:
      case ExprKind::LogPdfOf: return factor_window(e);
      case ExprKind::Iverson: return iverson_window(e->kids[0]);
      case ExprKind::Match: return unite(scan(e->kids[1]), scan(e->kids[2]));
      case ExprKind::LogSumExp: {
        Window w = scan(e->kids[0]);
        for (size_t i = 1; i < e->kids.size(); ++i) w = unite(w, scan(e->kids[i]));
        return w;
      }
      case ExprKind::Integral: return scan(e->kids[0]);
      default: return {};
    }
  }
};

// Support of an integer integration variable: either pinned by an Iverson
// equality, or covered by a Poisson mass factor whose tail can be truncated.
struct IntSupport {
  bool pinned = false;
  long long pin = 0;
  bool poisson = false;
  double rate = 0.0;
};

struct IntScan {
  SupportScan base;
  IntSupport out;

  void scan(const ExprRef& e) {
    switch (e->kind) {
      case ExprKind::Prim:
        if (e->op == PrimOp::MulReal || e->op == PrimOp::AddReal) {
          scan(e->kids[0]);
          scan(e->kids[1]);
        }
        return;
      case ExprKind::Let: {
        auto it = base.defs.find(e->name);
        ExprRef saved = it == base.defs.end() ? nullptr : it->second;
        base.defs[e->name] = e->kids[0];
        scan(e->kids[1]);
        if (saved)
          base.defs[e->name] = saved;
        else
          base.defs.erase(e->name);
        return;
      }
      case ExprKind::Match:
        scan(e->kids[1]);
        scan(e->kids[2]);
        return;
      case ExprKind::Iverson: {
        const ExprRef& p = e->kids[0];
        if (p->kind == ExprKind::Prim && p->op == PrimOp::Eq && p->kids.size() == 2 &&
            !out.pinned) {
          for (int side = 0; side < 2; ++side) {
            if (!base.is_target(p->kids[side])) continue;
            auto v = base.try_eval(p->kids[1 - side]);
            if (v && v->kind() == ValueKind::Int) {
              out.pinned = true;
              out.pin = v->as_int();
            }
          }
        }
        return;
      }
      case ExprKind::PdfOf:
      case ExprKind::LogPdfOf:
        if (e->dist == Dist::Poisson && base.is_target(e->kids[1]) && !out.poisson) {
          auto v = base.try_eval_real(e->kids[0]);
          if (v) {
            out.poisson = true;
            out.rate = *v;
          }
        }
        return;
      case ExprKind::Integral: scan(e->kids[0]); return;
      default: return;
    }
  }
};

// ---------------------------------------------------------------------------
// Stock integration, one binder at a time, left to right.
// ---------------------------------------------------------------------------

struct IntegralEval {
  Evaluator& ev;
  const Expr& node;

  double run() { return component(0); }

  double component(size_t i) {
    if (i == node.binders.size()) return eval_real_node(ev, node.kids[0]);
    const std::string& name = node.binders[i];
    ev.env.bind(name, Value::unitV());
    double r = over_type(node.types[i], ast::var(name), [&](Value v) {
      ev.env.set_last(name, std::move(v));
      return component(i + 1);
    });
    ev.env.pop();
    return r;
  }

  template <class K>
  double over_type(const TypeRef& t, const ExprRef& path, const K& k) {
    switch (t->kind()) {
      case TypeKind::Unit: return k(Value::unitV());
      case TypeKind::Sum: {
        double l = over_type(t->left(), nullptr, [&](Value v) { return k(Value::inlV(v)); });
        double r = over_type(t->right(), nullptr, [&](Value v) { return k(Value::inrV(v)); });
        return l + r;
      }
      case TypeKind::Prod:
        return over_type(t->left(), path ? ast::fst(path) : nullptr, [&](Value a) {
          return over_type(t->right(), path ? ast::snd(path) : nullptr, [&](Value b) {
            return k(Value::pairV(a, std::move(b)));
          });
        });
      case TypeKind::Int: return over_int(path, k);
      case TypeKind::Real: return over_real(path, k);
    }
    throw EvalError("cannot integrate over this type");
  }

  template <class K>
  double over_int(const ExprRef& path, const K& k) {
    IntSupport sup;
    if (path) {
      IntScan scan{SupportScan{ev, path, {}}, {}};
      scan.scan(node.kids[0]);
      sup = scan.out;
    }
    if (sup.pinned) return k(Value::intV(sup.pin));
    if (sup.poisson) {
      if (!(sup.rate > 0.0)) return 0.0;  // invalid rate: the mass factor is 0 everywhere
      double total = 0.0, cum = 0.0;
      double logr = std::log(sup.rate), lg = 0.0;
      for (long long n = 0;; ++n) {
        double nf = static_cast<double>(n);
        if (n > 0) lg += std::log(nf);
        cum += std::exp(nf * logr - sup.rate - lg);
        total += k(Value::intV(n));
        if (cum >= 1.0 - ev.cfg.poisson_tail_tol) break;
        if (n > 200000) {
          ev.flag("Poisson tail did not close");
          return 0.0;
        }
      }
      return total;
    }
    ev.flag("integral over int without a finite support constraint");
    return 0.0;
  }

  template <class K>
  double over_real(const ExprRef& path, const K& k) {
    Window w;
    if (path) {
      SupportScan scan{ev, path, {}};
      w = scan.scan(node.kids[0]);
    }
    if (w.empty()) return 0.0;
    auto f = [&](double x) { return k(Value::realV(x)); };
    bool converged = true;
    int budget = ev.cfg.max_subdiv;
    double r;
    if (std::isfinite(w.lo) && std::isfinite(w.hi)) {
      if (w.lo == w.hi) return 0.0;
      r = seeded_adaptive(f, w.lo, w.hi, 8, ev.cfg, converged, &budget);
    } else if (std::isfinite(w.lo)) {
      // x = lo + exp(pi/2 sinh t): double-exponential map of the half line
      auto g = [&](double t) {
        double u = kPiHalf * std::sinh(t);
        double eu = std::exp(u);
        return f(w.lo + eu) * eu * kPiHalf * std::cosh(t);
      };
      r = seeded_adaptive(g, -4.0, 4.0, 64, ev.cfg, converged, &budget);
    } else if (std::isfinite(w.hi)) {
      auto g = [&](double t) {
        double u = kPiHalf * std::sinh(t);
        double eu = std::exp(u);
        return f(w.hi - eu) * eu * kPiHalf * std::cosh(t);
      };
      r = seeded_adaptive(g, -4.0, 4.0, 64, ev.cfg, converged, &budget);
    } else {
      // x = sinh(pi/2 sinh t): double-exponential map of the whole line
      auto g = [&](double t) {
        double u = kPiHalf * std::sinh(t);
        return f(std::sinh(u)) * std::cosh(u) * kPiHalf * std::cosh(t);
      };
      r = seeded_adaptive(g, -4.0, 4.0, 64, ev.cfg, converged, &budget);
    }
    if (!converged) {
      ev.flag("real integral did not converge");
      return 0.0;
    }
    return r;
  }
};

Value eval_node(Evaluator& ev, const ExprRef& e) {
  switch (e->kind) {
    case ExprKind::Var: {
      const Value* v = ev.env.lookup(e->name);
      if (!v) throw EvalError("unbound variable '" + e->name + "'");
      return *v;
    }
    case ExprKind::Const: return e->scalar;
    case ExprKind::Let: {
      Value m = eval_node(ev, e->kids[0]);
      ev.env.bind(e->name, std::move(m));
      Value n = eval_node(ev, e->kids[1]);
      ev.env.pop();
      return n;
    }
    case ExprKind::Match: {
      Value m = eval_node(ev, e->kids[0]);
      int arm = m.is_inl() ? 0 : 1;
      ev.env.bind(e->binders[arm], m.inner());
      Value n = eval_node(ev, e->kids[arm + 1]);
      ev.env.pop();
      return n;
    }
    case ExprKind::Plate: {
      std::vector<Value> parts;
      parts.reserve(static_cast<size_t>(e->count));
      for (long long i = 0; i < e->count; ++i) {
        ev.env.bind(e->name, Value::intV(i));
        parts.push_back(eval_node(ev, e->kids[0]));
        ev.env.pop();
      }
      return Value::tupleV(parts);
    }
    case ExprKind::Random:
    case ExprKind::Fail: throw EvalError("target expressions cannot draw or fail");
    case ExprKind::PdfOf: {
      Value arg = eval_node(ev, e->kids[0]);
      Value pt = eval_node(ev, e->kids[1]);
      return Value::realV(pdf(e->dist, arg, pt));
    }
    case ExprKind::LogPdfOf: {
      Value arg = eval_node(ev, e->kids[0]);
      Value pt = eval_node(ev, e->kids[1]);
      return Value::realV(log_pdf(e->dist, arg, pt));
    }
    case ExprKind::ProdBy: {
      double acc = 1.0;
      for (long long i = 0; i < e->count && acc != 0.0; ++i) {
        ev.env.bind(e->name, Value::intV(i));
        acc *= eval_real_node(ev, e->kids[0]);
        ev.env.pop();
      }
      return Value::realV(acc);
    }
    case ExprKind::LogProdBy: {
      double acc = 0.0;
      for (long long i = 0; i < e->count; ++i) {
        ev.env.bind(e->name, Value::intV(i));
        acc += eval_real_node(ev, e->kids[0]);
        ev.env.pop();
        if (acc == -kInf) break;
      }
      return Value::realV(acc);
    }
    case ExprKind::LogSumExp: {
      std::vector<double> xs;
      xs.reserve(e->kids.size());
      double m = -kInf;
      for (const auto& kid : e->kids) {
        xs.push_back(eval_real_node(ev, kid));
        m = std::max(m, xs.back());
      }
      if (m == -kInf || m == kInf) return Value::realV(m);
      double s = 0.0;
      for (double x : xs) s += std::exp(x - m);
      return Value::realV(m + std::log(s));
    }
    case ExprKind::Integral: {
      IntegralEval ie{ev, *e};
      return Value::realV(ie.run());
    }
    default: {
      std::vector<Value> kids;
      kids.reserve(e->kids.size());
      for (const auto& kid : e->kids) kids.push_back(eval_node(ev, kid));
      return apply_det_node(*e, kids);
    }
  }
}

}  // namespace

Value eval(const ExprRef& e, ValueEnv& env, const EvalConfig& cfg, EvalDiag* diag) {
  Evaluator ev{cfg, env, diag};
  return eval_node(ev, e);
}

double eval_real(const ExprRef& e, ValueEnv& env, const EvalConfig& cfg, EvalDiag* diag) {
  Value v = eval(e, env, cfg, diag);
  if (v.kind() != ValueKind::Real) throw EvalError("expected a real result");
  return v.as_real();
}

}  // namespace fundens
