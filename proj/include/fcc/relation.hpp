// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcc/term.hpp"
#include "fcc/typing.hpp"

namespace fcc {

// Bounded checks of the step-indexed simulation/equivalence relations.
// Universal quantifiers over values are sampled from a corpus of
// candidate related pairs, so the checker is a falsifier: Related means
// "no counterexample found within budget", never a proof, at arrow
// types.
enum class VerdictKind { Related, Unrelated, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Related;
  std::string witness;        // Unrelated: concrete counterexample trace
  std::uint64_t probes = 0;   // body instantiations exercised

  bool related() const { return kind == VerdictKind::Related; }
  bool unrelated() const { return kind == VerdictKind::Unrelated; }
};

const char* verdict_name(VerdictKind k);

// Candidate related source/target value pair at a source type.
struct RelatedPair {
  SrcTermPtr src;
  TgtTermPtr tgt;
  SrcTy type;
};

// Same-language candidate pair for the target/target relations.
struct TgtRelatedPair {
  TgtTermPtr left, right;
  TgtTy type;
};

struct EquivCfg {
  std::uint64_t fuel = 2000;          // evaluation budget for the right-hand side
  unsigned samples_per_quantifier = 3;
  std::vector<RelatedPair> corpus;
  std::vector<TgtRelatedPair> tgt_corpus;
};

// Atomic values, small pairs, and (V, cc V) function pairs.
EquivCfg default_equiv_cfg();

// Source/target simulation at type T and index k: if M reaches a value V
// within k steps (say j), M' must evaluate to some V' with
// equiv_check(T, k - j, V, V'). Both terms must be closed.
Verdict sim_check(const SrcTy& T, unsigned k, const SrcTermPtr& M, const TgtTermPtr& Mp, const EquivCfg& cfg);

// Source/target value equivalence. At arrow types and k = 0 only the
// closure shape is checked; at k+1 the k-level check is combined with
// sampled instantiations of both bodies.
Verdict equiv_check(const SrcTy& T, unsigned k, const SrcTermPtr& V, const TgtTermPtr& Vp, const EquivCfg& cfg);

// Target substitution split into per-variable values plus one reified
// environment value for the remaining context entries.
struct TgtSubstWithEnv {
  std::vector<std::pair<Name, TgtTermPtr>> direct;
  TgtTermPtr env;
};

// Pairwise equivalence per context entry; `gamma`'s first direct.size()
// entries pair with `direct`, the rest with the components of `env` in
// order (first remaining entry = first tuple component).
Verdict subst_equiv_check(const SrcCtx& gamma, unsigned k, const SrcValueSubst& delta,
                          const TgtSubstWithEnv& deltap, const EquivCfg& cfg);

// Same-language (target/target) relations used for code hoisting, with
// separate arrow cases for code types (direct beta instantiation) and
// closure types (triple-tuple instantiation).
Verdict sim_tgt_check(const TgtTy& T, unsigned k, const TgtTermPtr& M, const TgtTermPtr& Mp, const EquivCfg& cfg);
Verdict equiv_tgt_check(const TgtTy& T, unsigned k, const TgtTermPtr& V, const TgtTermPtr& Vp, const EquivCfg& cfg);

nlohmann::json verdict_json(const std::string& type_text, unsigned index, const Verdict& v);

}  // namespace fcc
