#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fundens/error.hpp"
#include "fundens/expr.hpp"

namespace fundens {

/// Ordered typing environment x1:t1,...,xn:tn. Later bindings shadow earlier
/// ones, so scoped checking can push and pop.
class TypeEnv {
public:
  TypeEnv() = default;

  void bind(std::string name, TypeRef t) { entries_.emplace_back(std::move(name), std::move(t)); }
  void pop() { entries_.pop_back(); }

  const TypeRef* lookup(const std::string& name) const {
    for (size_t i = entries_.size(); i-- > 0;)
      if (entries_[i].first == name) return &entries_[i].second;
    return nullptr;
  }

  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  const std::pair<std::string, TypeRef>& at(size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

private:
  std::vector<std::pair<std::string, TypeRef>> entries_;
};

enum class Lang { Fun, Target };

/// Typechecks an expression; throws TypeError when the expression has no
/// type. Fun rejects the integration forms; Target rejects random and fail.
TypeRef typecheck(const ExprRef& e, const TypeEnv& env, Lang lang);

inline TypeRef typecheck_fun(const ExprRef& e, const TypeEnv& env = {}) {
  return typecheck(e, env, Lang::Fun);
}
inline TypeRef typecheck_target(const ExprRef& e, const TypeEnv& env = {}) {
  return typecheck(e, env, Lang::Target);
}

/// A term is pure iff it contains no occurrence of random or fail.
bool is_pure(const ExprRef& e);

/// Argument and result types of a distribution family.
TypeRef dist_arg_type(Dist d);
TypeRef dist_result_type(Dist d);
const char* dist_name(Dist d);
int dist_arity(Dist d);

}  // namespace fundens
