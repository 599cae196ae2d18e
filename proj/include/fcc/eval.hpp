// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "fcc/term.hpp"

namespace fcc {

template <class TermT>
struct EvalResult {
  enum class Kind { Value, Timeout, Stuck };

  Kind kind;
  typename TermT::Ptr term;  // Value: the value; Stuck: the stuck term
  std::uint64_t steps = 0;   // Value: exact step count; Timeout: the fuel

  bool is_value() const { return kind == Kind::Value; }
};

using SrcEvalResult = EvalResult<SrcTerm>;
using TgtEvalResult = EvalResult<TgtTerm>;

// One deterministic left-to-right call-by-value step; empty when the term
// is a value or stuck. Terms must be closed.
std::optional<SrcTermPtr> step_src(const SrcTermPtr& m);
std::optional<TgtTermPtr> step_tgt(const TgtTermPtr& m);

SrcEvalResult eval(const SrcTermPtr& m, std::uint64_t fuel);
TgtEvalResult eval(const TgtTermPtr& m, std::uint64_t fuel);

}  // namespace fcc
