#include "fundens/type.hpp"

namespace fundens {

const TypeRef& Type::intT() {
  static TypeRef t = std::make_shared<Type>(TypeKind::Int, nullptr, nullptr);
  return t;
}

const TypeRef& Type::realT() {
  static TypeRef t = std::make_shared<Type>(TypeKind::Real, nullptr, nullptr);
  return t;
}

const TypeRef& Type::unitT() {
  static TypeRef t = std::make_shared<Type>(TypeKind::Unit, nullptr, nullptr);
  return t;
}

const TypeRef& Type::boolT() {
  static TypeRef t = sum(unitT(), unitT());
  return t;
}

TypeRef Type::prod(TypeRef a, TypeRef b) {
  return std::make_shared<Type>(TypeKind::Prod, std::move(a), std::move(b));
}

TypeRef Type::sum(TypeRef a, TypeRef b) {
  return std::make_shared<Type>(TypeKind::Sum, std::move(a), std::move(b));
}

TypeRef Type::tuple(const std::vector<TypeRef>& parts) {
  TypeRef t = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) t = prod(parts[i], t);
  return t;
}

TypeRef Type::array(const TypeRef& elem, long long n) {
  return tuple(std::vector<TypeRef>(static_cast<size_t>(n), elem));
}

bool Type::is_discrete() const {
  switch (kind_) {
    case TypeKind::Int:
    case TypeKind::Unit: return true;
    case TypeKind::Real: return false;
    case TypeKind::Prod:
    case TypeKind::Sum: return a_->is_discrete() && b_->is_discrete();
  }
  return false;
}

bool Type::is_bool() const {
  return kind_ == TypeKind::Sum && a_->kind() == TypeKind::Unit &&
         b_->kind() == TypeKind::Unit;
}

std::string Type::str() const {
  switch (kind_) {
    case TypeKind::Int: return "int";
    case TypeKind::Real: return "real";
    case TypeKind::Unit: return "unit";
    case TypeKind::Prod: {
      std::string l = a_->str();
      if (a_->kind() == TypeKind::Prod || a_->kind() == TypeKind::Sum) l = "(" + l + ")";
      std::string r = b_->str();
      if (b_->kind() == TypeKind::Sum) r = "(" + r + ")";
      return l + " * " + r;
    }
    case TypeKind::Sum: {
      if (is_bool()) return "bool";
      std::string l = a_->str();
      if (a_->kind() == TypeKind::Sum) l = "(" + l + ")";
      return l + " + " + b_->str();
    }
  }
  return "?";
}

bool same_type(const TypeRef& a, const TypeRef& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TypeKind::Int:
    case TypeKind::Real:
    case TypeKind::Unit: return true;
    default: return same_type(a->left(), b->left()) && same_type(a->right(), b->right());
  }
}

bool split_tuple(const TypeRef& t, long long n, std::vector<TypeRef>& out) {
  out.clear();
  TypeRef cur = t;
  for (long long i = 0; i + 1 < n; ++i) {
    if (!cur || cur->kind() != TypeKind::Prod) return false;
    out.push_back(cur->left());
    cur = cur->right();
  }
  if (!cur) return false;
  out.push_back(cur);
  return true;
}

}  // namespace fundens
