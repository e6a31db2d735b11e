#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fundens/type.hpp"

namespace fundens {

enum class ValueKind : unsigned char { Int, Real, Unit, Pair, Inl, Inr };

/// Closed values: scalars, tuples and sum injections. true is encoded as
/// inl () and false as inr (), so matching a boolean takes the then-branch
/// on inl. Copies are cheap (children are shared).
class Value {
public:
  Value() : kind_(ValueKind::Unit) {}

  static Value intV(long long n);
  static Value realV(double r);
  static Value unitV();
  static Value pairV(Value a, Value b);
  static Value inlV(Value v);
  static Value inrV(Value v);
  static Value boolV(bool b);
  static Value tupleV(const std::vector<Value>& parts);

  ValueKind kind() const { return kind_; }
  long long as_int() const { return i_; }
  double as_real() const { return r_; }
  const Value& first() const { return *a_; }
  const Value& second() const { return *b_; }
  const Value& inner() const { return *a_; }
  bool is_inl() const { return kind_ == ValueKind::Inl; }
  bool is_true() const { return kind_ == ValueKind::Inl; }

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  /// Total order (kind-major), so values can key ordered maps.
  bool operator<(const Value& o) const;

  std::string str() const;

private:
  ValueKind kind_;
  long long i_ = 0;
  double r_ = 0.0;
  std::shared_ptr<const Value> a_, b_;
};

/// Default value 0_t: (), 0, 0.0, pairs of defaults, inl of the left default.
Value default_value(const TypeRef& t);

/// Flattens all real leaves of a value in depth-first order.
void flatten_reals(const Value& v, std::vector<double>& out);

}  // namespace fundens
