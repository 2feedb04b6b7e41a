// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace edusat {

/// Interned identifier. Two symbols compare equal iff their spellings do;
/// copying is a pointer copy. The intern pool lives for the whole process.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view name);

  const std::string& str() const noexcept { return *name_; }
  bool empty() const noexcept { return name_->empty(); }

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.name_ == b.name_; }
  /// Lexicographic on the spelling, not the address.
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
    return a.name_ == b.name_ ? std::strong_ordering::equal : *a.name_ <=> *b.name_;
  }

  std::size_t hash() const noexcept { return std::hash<const void*>{}(name_); }

 private:
  const std::string* name_;
};

inline std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.str(); }

/// Orders "x2" before "x10": a shared alphabetic prefix followed by a numeric
/// suffix compares numerically.
bool natural_less(std::string_view a, std::string_view b);

}  // namespace edusat

template <>
struct std::hash<edusat::Symbol> {
  std::size_t operator()(edusat::Symbol s) const noexcept { return s.hash(); }
};
