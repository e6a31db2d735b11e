#include "fundens/sampler.hpp"

#include <algorithm>

#include "fundens/distributions.hpp"
#include "fundens/error.hpp"
#include "fundens/eval.hpp"

namespace fundens {

std::optional<Value> sample(const ExprRef& e, ValueEnv& env, RngStream& rng) {
  switch (e->kind) {
    case ExprKind::Var: {
      const Value* v = env.lookup(e->name);
      if (!v) throw EvalError("unbound variable '" + e->name + "' while sampling");
      return *v;
    }
    case ExprKind::Const: return e->scalar;
    case ExprKind::Fail: return std::nullopt;
    case ExprKind::Random: {
      auto arg = sample(e->kids[0], env, rng);
      if (!arg) return std::nullopt;
      return sample_dist(e->dist, *arg, rng);
    }
    case ExprKind::Let: {
      auto m = sample(e->kids[0], env, rng);
      if (!m) return std::nullopt;
      env.bind(e->name, std::move(*m));
      auto n = sample(e->kids[1], env, rng);
      env.pop();
      return n;
    }
    case ExprKind::Match: {
      auto m = sample(e->kids[0], env, rng);
      if (!m) return std::nullopt;
      int arm = m->is_inl() ? 0 : 1;
      env.bind(e->binders[arm], m->inner());
      auto n = sample(e->kids[arm + 1], env, rng);
      env.pop();
      return n;
    }
    case ExprKind::Plate: {
      std::vector<Value> parts;
      parts.reserve(static_cast<size_t>(e->count));
      for (long long i = 0; i < e->count; ++i) {
        env.bind(e->name, Value::intV(i));
        auto v = sample(e->kids[0], env, rng);
        env.pop();
        if (!v) return std::nullopt;
        parts.push_back(std::move(*v));
      }
      return Value::tupleV(parts);
    }
    default: {
      // deterministic nodes: evaluate children left to right
      std::vector<Value> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) {
        auto v = sample(k, env, rng);
        if (!v) return std::nullopt;
        kids.push_back(std::move(*v));
      }
      return apply_det_node(*e, kids);
    }
  }
}

namespace {

using Weighted = std::map<Value, double>;

void add_mass(Weighted& w, Value v, double p) {
  if (p <= 0.0) return;
  w[std::move(v)] += p;
}

Weighted enumerate(const ExprRef& e, ValueEnv& env);

// enumerate each kid in sequence, then apply the deterministic node
void enumerate_det(const ExprRef& e, ValueEnv& env, size_t i, std::vector<Value>& acc,
                   double p, Weighted& out) {
  if (i == e->kids.size()) {
    add_mass(out, apply_det_node(*e, acc), p);
    return;
  }
  Weighted part = enumerate(e->kids[i], env);
  for (const auto& [v, q] : part) {
    acc.push_back(v);
    enumerate_det(e, env, i + 1, acc, p * q, out);
    acc.pop_back();
  }
}

void enumerate_plate(const ExprRef& e, ValueEnv& env, long long i, std::vector<Value>& acc,
                     double p, Weighted& out) {
  if (i == e->count) {
    add_mass(out, Value::tupleV(acc), p);
    return;
  }
  env.bind(e->name, Value::intV(i));
  Weighted part = enumerate(e->kids[0], env);
  env.pop();
  for (const auto& [v, q] : part) {
    acc.push_back(v);
    enumerate_plate(e, env, i + 1, acc, p * q, out);
    acc.pop_back();
  }
}

Weighted enumerate(const ExprRef& e, ValueEnv& env) {
  Weighted out;
  switch (e->kind) {
    case ExprKind::Var: {
      const Value* v = env.lookup(e->name);
      if (!v) throw EvalError("unbound variable '" + e->name + "' in exact_measure");
      add_mass(out, *v, 1.0);
      return out;
    }
    case ExprKind::Const:
      add_mass(out, e->scalar, 1.0);
      return out;
    case ExprKind::Fail: return out;
    case ExprKind::Random: {
      if (e->dist != Dist::Bernoulli)
        throw NotFinitelyEnumerable(std::string(dist_name(e->dist)) +
                                    " does not have finitely enumerable support");
      Weighted args = enumerate(e->kids[0], env);
      for (const auto& [pv, q] : args) {
        if (!validate(Dist::Bernoulli, pv)) continue;  // failure: mass is lost
        double bias = pv.as_real();
        add_mass(out, Value::boolV(true), q * bias);
        add_mass(out, Value::boolV(false), q * (1.0 - bias));
      }
      return out;
    }
    case ExprKind::Let: {
      Weighted m = enumerate(e->kids[0], env);
      for (const auto& [v, p] : m) {
        env.bind(e->name, v);
        Weighted n = enumerate(e->kids[1], env);
        env.pop();
        for (const auto& [r, q] : n) add_mass(out, r, p * q);
      }
      return out;
    }
    case ExprKind::Match: {
      Weighted m = enumerate(e->kids[0], env);
      for (const auto& [v, p] : m) {
        int arm = v.is_inl() ? 0 : 1;
        env.bind(e->binders[arm], v.inner());
        Weighted n = enumerate(e->kids[arm + 1], env);
        env.pop();
        for (const auto& [r, q] : n) add_mass(out, r, p * q);
      }
      return out;
    }
    case ExprKind::Plate: {
      std::vector<Value> acc;
      enumerate_plate(e, env, 0, acc, 1.0, out);
      return out;
    }
    default: {
      std::vector<Value> acc;
      enumerate_det(e, env, 0, acc, 1.0, out);
      return out;
    }
  }
}

}  // namespace

DiscreteMeasure exact_measure(const ExprRef& e) {
  ValueEnv env;
  DiscreteMeasure m;
  m.mass = enumerate(e, env);
  return m;
}

double EmpiricalCdf::operator()(double x) const {
  auto it = std::upper_bound(draws.begin(), draws.end(), x);
  if (draws.empty()) return 0.0;
  return static_cast<double>(it - draws.begin()) / static_cast<double>(draws.size());
}

EmpiricalCdf empirical_cdf(const ExprRef& e, ValueEnv env, long long n, RngStream& rng) {
  EmpiricalCdf cdf;
  cdf.n = n;
  long long failures = 0;
  for (long long i = 0; i < n; ++i) {
    auto v = sample(e, env, rng);
    if (!v)
      ++failures;
    else
      cdf.draws.push_back(v->as_real());
  }
  std::sort(cdf.draws.begin(), cdf.draws.end());
  cdf.failure_fraction = n == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(n);
  return cdf;
}

}  // namespace fundens
