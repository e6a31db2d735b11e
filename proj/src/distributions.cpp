#include "fundens/distributions.hpp"

#include <cmath>
#include <limits>

namespace fundens {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2
}  // namespace

void unpack_params(Dist d, const Value& params, double out[2]) {
  int n = dist_arity(d);
  if (n == 1) {
    if (params.kind() != ValueKind::Real)
      throw TypeError(std::string(dist_name(d)) + " expects one real parameter");
    out[0] = params.as_real();
  } else {
    if (params.kind() != ValueKind::Pair || params.first().kind() != ValueKind::Real ||
        params.second().kind() != ValueKind::Real)
      throw TypeError(std::string(dist_name(d)) + " expects two real parameters");
    out[0] = params.first().as_real();
    out[1] = params.second().as_real();
  }
}

bool dist_validate(Dist d, const double* p) {
  for (int i = 0; i < dist_arity(d); ++i)
    if (!std::isfinite(p[i])) return false;
  switch (d) {
    case Dist::Bernoulli: return p[0] >= 0.0 && p[0] <= 1.0;
    case Dist::Poisson: return p[0] > 0.0;
    case Dist::Gaussian: return p[1] > 0.0;
    case Dist::Beta: return p[0] > 0.0 && p[1] > 0.0;
    case Dist::Gamma: return p[0] > 0.0 && p[1] > 0.0;
    case Dist::Uniform: return p[0] < p[1];
  }
  return false;
}

bool validate(Dist d, const Value& params) {
  double p[2];
  unpack_params(d, params, p);
  return dist_validate(d, p);
}

namespace {

// x^e contributions at the support edge, where 0*log(0) must read as 0 for
// the unit exponent and the density diverges for exponents below zero.
double edge_power_log(double base, double expo) {
  if (base > 0.0) return expo * std::log(base);
  if (expo > 0.0) return kNegInf;                                // x^e -> 0
  if (expo == 0.0) return 0.0;                                   // x^0 = 1
  return std::numeric_limits<double>::infinity();                // divergent
}

double log_pdf_impl(Dist d, const double* p, const Value& x) {
  if (!dist_validate(d, p)) return kNegInf;
  switch (d) {
    case Dist::Bernoulli: {
      bool b = x.is_true();
      double q = b ? p[0] : 1.0 - p[0];
      return q > 0.0 ? std::log(q) : kNegInf;
    }
    case Dist::Poisson: {
      long long k = x.as_int();
      if (k < 0) return kNegInf;
      double kk = static_cast<double>(k);
      return kk * std::log(p[0]) - p[0] - std::lgamma(kk + 1.0);
    }
    case Dist::Gaussian: {
      double z = (x.as_real() - p[0]) / p[1];
      return -std::log(p[1]) - kHalfLog2Pi - 0.5 * z * z;
    }
    case Dist::Beta: {
      double v = x.as_real();
      if (v < 0.0 || v > 1.0) return kNegInf;
      double logB = std::lgamma(p[0]) + std::lgamma(p[1]) - std::lgamma(p[0] + p[1]);
      return edge_power_log(v, p[0] - 1.0) + edge_power_log(1.0 - v, p[1] - 1.0) - logB;
    }
    case Dist::Gamma: {
      double v = x.as_real();
      if (v < 0.0) return kNegInf;
      return edge_power_log(v, p[0] - 1.0) - v / p[1] - std::lgamma(p[0]) -
             p[0] * std::log(p[1]);
    }
    case Dist::Uniform: {
      double v = x.as_real();
      if (v < p[0] || v > p[1]) return kNegInf;
      return -std::log(p[1] - p[0]);
    }
  }
  return kNegInf;
}

}  // namespace

double dist_log_pdf(Dist d, const double* p, const Value& x) { return log_pdf_impl(d, p, x); }

double dist_pdf(Dist d, const double* p, const Value& x) {
  if (!dist_validate(d, p)) return 0.0;
  switch (d) {
    case Dist::Bernoulli: return x.is_true() ? p[0] : 1.0 - p[0];
    case Dist::Uniform: {
      double v = x.as_real();
      return (v < p[0] || v > p[1]) ? 0.0 : 1.0 / (p[1] - p[0]);
    }
    default: return std::exp(log_pdf_impl(d, p, x));
  }
}

double pdf(Dist d, const Value& params, const Value& x) {
  double p[2];
  unpack_params(d, params, p);
  return dist_pdf(d, p, x);
}

double log_pdf(Dist d, const Value& params, const Value& x) {
  double p[2];
  unpack_params(d, params, p);
  return dist_log_pdf(d, p, x);
}

namespace {

double sample_gamma_shape_ge1(double shape, RngStream& rng) {
  // Marsaglia-Tsang squeeze, unit scale.
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = rng.u01_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  if (shape >= 1.0) return scale * sample_gamma_shape_ge1(shape, rng);
  double g = sample_gamma_shape_ge1(shape + 1.0, rng);
  return scale * g * std::pow(rng.u01_open(), 1.0 / shape);
}

long long sample_poisson(double rate, RngStream& rng) {
  // Knuth's product method on rate chunks small enough that exp(-chunk)
  // stays well above the underflow threshold.
  long long total = 0;
  while (rate > 0.0) {
    double chunk = rate > 30.0 ? 30.0 : rate;
    rate -= chunk;
    double limit = std::exp(-chunk);
    double prod = rng.u01_open();
    long long k = 0;
    while (prod > limit) {
      ++k;
      prod *= rng.u01_open();
    }
    total += k;
  }
  return total;
}

}  // namespace

std::optional<Value> dist_sample(Dist d, const double* p, RngStream& rng) {
  if (!dist_validate(d, p)) return std::nullopt;
  switch (d) {
    case Dist::Bernoulli: return Value::boolV(rng.u01() < p[0]);
    case Dist::Poisson: return Value::intV(sample_poisson(p[0], rng));
    case Dist::Gaussian: return Value::realV(p[0] + p[1] * rng.gaussian());
    case Dist::Beta: {
      double a = sample_gamma(p[0], 1.0, rng);
      double b = sample_gamma(p[1], 1.0, rng);
      return Value::realV(a / (a + b));
    }
    case Dist::Gamma: return Value::realV(sample_gamma(p[0], p[1], rng));
    case Dist::Uniform: return Value::realV(p[0] + (p[1] - p[0]) * rng.u01());
  }
  return std::nullopt;
}

std::optional<Value> sample_dist(Dist d, const Value& params, RngStream& rng) {
  double p[2];
  unpack_params(d, params, p);
  return dist_sample(d, p, rng);
}

}  // namespace fundens
