// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace fcc {

// Identifier plus a disambiguating stamp. Stamp 0 is reserved for "raw"
// names: free occurrences produced by the parser and hand-built test
// terms. Binders introduced by the parser or by a transformation carry a
// fresh nonzero stamp, so distinct binders never collide even when their
// texts agree.
struct Name {
  std::string text;
  std::uint64_t stamp = 0;

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name&, const Name&) = default;
};

inline Name raw_name(std::string text) { return Name{std::move(text), 0}; }

// Fresh stamps come from one process-global monotone counter (atomic).
// It starts at 1 on process startup, which keeps CLI output reproducible
// run to run.
std::uint64_t fresh_stamp();

// Keeps the counter strictly ahead of a stamp-like value read from input
// (used by the parser for explicit rigid-type ids).
void bump_stamp_floor(std::uint64_t seen);

Name fresh(std::string_view base);

// Diagnostic rendering only; the pretty-printer has its own scheme.
std::string show(const Name& n);

}  // namespace fcc

template <>
struct std::hash<fcc::Name> {
  std::size_t operator()(const fcc::Name& n) const noexcept {
    return std::hash<std::string>{}(n.text) ^ (n.stamp * 0x9e3779b97f4a7c15ULL);
  }
};
