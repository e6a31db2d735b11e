#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fundens {

enum class TypeKind : unsigned char { Int, Real, Unit, Prod, Sum };

class Type;
using TypeRef = std::shared_ptr<const Type>;

/// Types of the source and target languages: int, real, unit, products and
/// sums. bool is the alias unit+unit. Types are immutable and shared.
class Type {
public:
  TypeKind kind() const { return kind_; }
  const TypeRef& left() const { return a_; }
  const TypeRef& right() const { return b_; }

  static const TypeRef& intT();
  static const TypeRef& realT();
  static const TypeRef& unitT();
  static const TypeRef& boolT();
  static TypeRef prod(TypeRef a, TypeRef b);
  static TypeRef sum(TypeRef a, TypeRef b);

  /// Right-nested tuple (M1,(M2,...,Mn)); parts must be nonempty.
  static TypeRef tuple(const std::vector<TypeRef>& parts);
  /// Fixed-size array encoded as an n-tuple of the element type (n >= 1).
  static TypeRef array(const TypeRef& elem, long long n);

  /// A type is discrete iff real occurs nowhere in it.
  bool is_discrete() const;
  bool is_bool() const;
  std::string str() const;

  Type(TypeKind k, TypeRef a, TypeRef b) : kind_(k), a_(std::move(a)), b_(std::move(b)) {}

private:
  TypeKind kind_;
  TypeRef a_, b_;
};

bool same_type(const TypeRef& a, const TypeRef& b);

/// Splits a right-nested tuple type into exactly n components;
/// returns false if t cannot be viewed that way.
bool split_tuple(const TypeRef& t, long long n, std::vector<TypeRef>& out);

}  // namespace fundens
