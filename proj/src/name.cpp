// SPDX-License-Identifier: Apache-2.0
#include "fcc/name.hpp"

#include <atomic>

namespace fcc {

namespace {
std::atomic<std::uint64_t> g_counter{1};
}

std::uint64_t fresh_stamp() { return g_counter.fetch_add(1); }

void bump_stamp_floor(std::uint64_t seen) {
  std::uint64_t cur = g_counter.load();
  while (cur <= seen && !g_counter.compare_exchange_weak(cur, seen + 1)) {
  }
}

Name fresh(std::string_view base) {
  return Name{std::string(base), fresh_stamp()};
}

std::string show(const Name& n) {
  if (n.stamp == 0) return n.text;
  return n.text + "#" + std::to_string(n.stamp);
}

}  // namespace fcc
