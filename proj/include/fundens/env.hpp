#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fundens/value.hpp"

namespace fundens {

/// Scoped runtime environment mapping variables to closed values.
class ValueEnv {
public:
  void bind(std::string name, Value v) { entries_.emplace_back(std::move(name), std::move(v)); }
  void pop() { entries_.pop_back(); }

  const Value* lookup(const std::string& name) const {
    for (size_t i = entries_.size(); i-- > 0;)
      if (entries_[i].first == name) return &entries_[i].second;
    return nullptr;
  }

  /// Rebinds the innermost occurrence (used by integration loops).
  void set_last(const std::string& name, Value v) {
    for (size_t i = entries_.size(); i-- > 0;) {
      if (entries_[i].first == name) {
        entries_[i].second = std::move(v);
        return;
      }
    }
    bind(name, std::move(v));
  }

  size_t size() const { return entries_.size(); }
  void truncate(size_t n) { entries_.resize(n); }

private:
  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace fundens
