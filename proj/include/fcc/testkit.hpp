// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcc/term.hpp"
#include "fcc/typing.hpp"

namespace fcc {

// Same configuration, same stream: everything downstream of the seed is
// deterministic, and each index draws from its own split of the seed so
// cases are independent of each other.
struct GenCfg {
  std::uint64_t seed = 0;
  unsigned max_size = 25;
  std::optional<SrcTy> type_target;  // absent: a random small type per case
  std::uint64_t fuel = 500;          // source-side evaluation budget
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

 private:
  std::mt19937_64 eng_;
};

// Closed, well-typed terms by construction (generation follows a typing
// derivation); every emitted term is re-checked before it leaves.
class TypedGenerator {
 public:
  explicit TypedGenerator(GenCfg cfg) : cfg_(cfg) {}

  std::pair<SrcTermPtr, SrcTy> next() { return at(index_++); }
  std::pair<SrcTermPtr, SrcTy> at(std::uint64_t index) const;

 private:
  GenCfg cfg_;
  std::uint64_t index_ = 0;
};

// Closed value of the given type.
SrcTermPtr gen_value(Rng& rng, const SrcTy& type);

// Every subterm of a closed root, with the typing context in force at
// its position and its type.
struct OpenCase {
  SrcCtx gamma;
  SrcTermPtr term;
  SrcTy type;
};
std::vector<OpenCase> open_subterm_cases(const SrcTermPtr& closed_root);

enum class Pass { Cc, CcHoist, Cps };
const char* pass_name(Pass p);

struct Counterexample {
  std::string original, shrunk, detail;
};

struct Report {
  Pass pass = Pass::Cc;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;       // generated programs
  std::uint64_t terminated = 0;  // reached a value within the source fuel
  std::uint64_t agreed = 0;      // terminated and matched after the pass
  std::uint64_t src_fuel = 0;
  std::uint64_t transformed_fuel = 0;
  std::vector<Counterexample> counterexamples;

  bool clean() const { return counterexamples.empty() && agreed == terminated; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Generates `count` closed programs of type nat from `cfg`, applies the
// pass to each one that terminates within cfg.fuel, and compares the
// resulting numerals. Pass failures become (shrunk) counterexamples.
Report differential_run(Pass pass, const GenCfg& cfg, std::uint64_t count, std::uint64_t transformed_fuel = 20000);

// Greedy structural shrinking: repeatedly replaces the term by a smaller
// closed, same-typed candidate that still fails, until none does.
SrcTermPtr shrink(const SrcTermPtr& failing, const std::function<bool(const SrcTermPtr&)>& still_fails);

}  // namespace fcc
