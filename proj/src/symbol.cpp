// SPDX-License-Identifier: Apache-2.0

#include "edusat/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace edusat {
namespace {

struct Pool {
  std::mutex mutex;
  std::unordered_set<std::string> names;
};

Pool& pool() {
  static Pool instance;
  return instance;
}

const std::string* intern(std::string_view name) {
  Pool& p = pool();
  std::lock_guard lock(p.mutex);
  return &*p.names.emplace(name).first;
}

// Splits "abc123" into ("abc", "123"); the suffix is empty when there is no trailing digit run.
std::pair<std::string_view, std::string_view> split_suffix(std::string_view s) {
  std::size_t i = s.size();
  while (i > 0 && s[i - 1] >= '0' && s[i - 1] <= '9') --i;
  return {s.substr(0, i), s.substr(i)};
}

}  // namespace

Symbol::Symbol() : name_(intern("")) {}

Symbol::Symbol(std::string_view name) : name_(intern(name)) {}

bool natural_less(std::string_view a, std::string_view b) {
  auto [pa, sa] = split_suffix(a);
  auto [pb, sb] = split_suffix(b);
  if (pa != pb || sa.empty() || sb.empty()) return a < b;
  // Compare digit runs by magnitude, ignoring leading zeros.
  auto strip = [](std::string_view d) {
    while (d.size() > 1 && d.front() == '0') d.remove_prefix(1);
    return d;
  };
  auto da = strip(sa);
  auto db = strip(sb);
  if (da.size() != db.size()) return da.size() < db.size();
  if (da != db) return da < db;
  return a < b;
}

}  // namespace edusat
