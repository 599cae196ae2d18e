// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>

namespace fcc {

// Source language types: nat, unit, products and function types.
enum class SrcTypeKind { Nat, Unit, Prod, Arr };

struct SrcType {
  SrcTypeKind kind;
  std::shared_ptr<const SrcType> a, b;  // Prod/Arr operands
};

using SrcTy = std::shared_ptr<const SrcType>;

// Target language types add the code type (applied abstractions) and
// rigid opaque constants used to hide closure environments. The ordinary
// arrow is reserved for closures.
enum class TgtTypeKind { Nat, Unit, Prod, Arr, Code, Rigid };

struct TgtType {
  TgtTypeKind kind;
  std::shared_ptr<const TgtType> a, b;
  std::uint64_t rigid_id = 0;
};

using TgtTy = std::shared_ptr<const TgtType>;

namespace styp {
SrcTy nat();
SrcTy unit();
SrcTy prod(SrcTy a, SrcTy b);
SrcTy arr(SrcTy a, SrcTy b);
}  // namespace styp

namespace ttyp {
TgtTy nat();
TgtTy unit();
TgtTy prod(TgtTy a, TgtTy b);
TgtTy arr(TgtTy a, TgtTy b);
TgtTy code(TgtTy a, TgtTy b);
TgtTy rigid(std::uint64_t id);
// Allocates a previously unused rigid id.
TgtTy fresh_rigid();
}  // namespace ttyp

bool type_equal(const SrcTy& a, const SrcTy& b);
// Structural, with rigid constants equal iff their ids are.
bool type_equal(const TgtTy& a, const TgtTy& b);

bool contains_rigid(const TgtTy& t, std::uint64_t id);
bool contains_any_rigid(const TgtTy& t);

}  // namespace fcc
