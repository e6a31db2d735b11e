#include "fundens/value.hpp"

#include <cstdio>

namespace fundens {

Value Value::intV(long long n) {
  Value v;
  v.kind_ = ValueKind::Int;
  v.i_ = n;
  return v;
}

Value Value::realV(double r) {
  Value v;
  v.kind_ = ValueKind::Real;
  v.r_ = r;
  return v;
}

Value Value::unitV() { return Value(); }

Value Value::pairV(Value a, Value b) {
  Value v;
  v.kind_ = ValueKind::Pair;
  v.a_ = std::make_shared<Value>(std::move(a));
  v.b_ = std::make_shared<Value>(std::move(b));
  return v;
}

Value Value::inlV(Value inner) {
  Value v;
  v.kind_ = ValueKind::Inl;
  v.a_ = std::make_shared<Value>(std::move(inner));
  return v;
}

Value Value::inrV(Value inner) {
  Value v;
  v.kind_ = ValueKind::Inr;
  v.a_ = std::make_shared<Value>(std::move(inner));
  return v;
}

Value Value::boolV(bool b) { return b ? inlV(unitV()) : inrV(unitV()); }

Value Value::tupleV(const std::vector<Value>& parts) {
  Value v = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) v = pairV(parts[i], std::move(v));
  return v;
}

bool Value::operator==(const Value& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case ValueKind::Int: return i_ == o.i_;
    case ValueKind::Real: return r_ == o.r_;
    case ValueKind::Unit: return true;
    case ValueKind::Pair: return *a_ == *o.a_ && *b_ == *o.b_;
    case ValueKind::Inl:
    case ValueKind::Inr: return *a_ == *o.a_;
  }
  return false;
}

bool Value::operator<(const Value& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_;
  switch (kind_) {
    case ValueKind::Int: return i_ < o.i_;
    case ValueKind::Real: return r_ < o.r_;
    case ValueKind::Unit: return false;
    case ValueKind::Pair:
      if (*a_ < *o.a_) return true;
      if (*o.a_ < *a_) return false;
      return *b_ < *o.b_;
    case ValueKind::Inl:
    case ValueKind::Inr: return *a_ < *o.a_;
  }
  return false;
}

std::string Value::str() const {
  switch (kind_) {
    case ValueKind::Int: return std::to_string(i_);
    case ValueKind::Real: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", r_);
      return buf;
    }
    case ValueKind::Unit: return "()";
    case ValueKind::Pair: return "(" + a_->str() + ", " + b_->str() + ")";
    case ValueKind::Inl: return a_->kind() == ValueKind::Unit ? "true" : "inl " + a_->str();
    case ValueKind::Inr: return a_->kind() == ValueKind::Unit ? "false" : "inr " + a_->str();
  }
  return "?";
}

Value default_value(const TypeRef& t) {
  switch (t->kind()) {
    case TypeKind::Int: return Value::intV(0);
    case TypeKind::Real: return Value::realV(0.0);
    case TypeKind::Unit: return Value::unitV();
    case TypeKind::Prod:
      return Value::pairV(default_value(t->left()), default_value(t->right()));
    case TypeKind::Sum: return Value::inlV(default_value(t->left()));
  }
  return Value::unitV();
}

void flatten_reals(const Value& v, std::vector<double>& out) {
  switch (v.kind()) {
    case ValueKind::Real: out.push_back(v.as_real()); break;
    case ValueKind::Pair:
      flatten_reals(v.first(), out);
      flatten_reals(v.second(), out);
      break;
    case ValueKind::Inl:
    case ValueKind::Inr: flatten_reals(v.inner(), out); break;
    default: break;
  }
}

}  // namespace fundens
