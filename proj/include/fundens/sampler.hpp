#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fundens/env.hpp"
#include "fundens/expr.hpp"
#include "fundens/rng.hpp"

namespace fundens {

/// One draw from the sub-probability semantics of a source expression.
/// nullopt is the zero measure's missing mass (fail, or a draw with invalid
/// distribution parameters).
std::optional<Value> sample(const ExprRef& e, ValueEnv& env, RngStream& rng);

struct NotFinitelyEnumerable : std::runtime_error {
  explicit NotFinitelyEnumerable(const std::string& msg) : std::runtime_error(msg) {}
};

/// A finite sub-probability measure: outcome -> probability, total mass <= 1.
struct DiscreteMeasure {
  std::map<Value, double> mass;

  double total() const {
    double s = 0.0;
    for (const auto& [v, p] : mass) s += p;
    return s;
  }
  double at(const Value& v) const {
    auto it = mass.find(v);
    return it == mass.end() ? 0.0 : it->second;
  }
};

/// Exact measure of a program whose random choices are all Bernoulli, by
/// enumerating every branch assignment and multiplying branch probabilities.
/// Throws NotFinitelyEnumerable when a continuous or unbounded-support
/// distribution occurs.
DiscreteMeasure exact_measure(const ExprRef& e);

/// Empirical CDF over the Ok draws of a real-valued program.
struct EmpiricalCdf {
  std::vector<double> draws;  // sorted
  double failure_fraction = 0.0;
  long long n = 0;

  /// Fraction of Ok draws <= x.
  double operator()(double x) const;
};

EmpiricalCdf empirical_cdf(const ExprRef& e, ValueEnv env, long long n, RngStream& rng);

}  // namespace fundens
