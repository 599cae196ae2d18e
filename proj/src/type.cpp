// SPDX-License-Identifier: Apache-2.0
#include "fcc/type.hpp"

#include "fcc/name.hpp"

namespace fcc {

namespace styp {

SrcTy nat() {
  static const SrcTy t = std::make_shared<SrcType>(SrcType{SrcTypeKind::Nat, nullptr, nullptr});
  return t;
}

SrcTy unit() {
  static const SrcTy t = std::make_shared<SrcType>(SrcType{SrcTypeKind::Unit, nullptr, nullptr});
  return t;
}

SrcTy prod(SrcTy a, SrcTy b) {
  return std::make_shared<SrcType>(SrcType{SrcTypeKind::Prod, std::move(a), std::move(b)});
}

SrcTy arr(SrcTy a, SrcTy b) {
  return std::make_shared<SrcType>(SrcType{SrcTypeKind::Arr, std::move(a), std::move(b)});
}

}  // namespace styp

namespace ttyp {

TgtTy nat() {
  static const TgtTy t = std::make_shared<TgtType>(TgtType{TgtTypeKind::Nat, nullptr, nullptr, 0});
  return t;
}

TgtTy unit() {
  static const TgtTy t = std::make_shared<TgtType>(TgtType{TgtTypeKind::Unit, nullptr, nullptr, 0});
  return t;
}

TgtTy prod(TgtTy a, TgtTy b) {
  return std::make_shared<TgtType>(TgtType{TgtTypeKind::Prod, std::move(a), std::move(b), 0});
}

TgtTy arr(TgtTy a, TgtTy b) {
  return std::make_shared<TgtType>(TgtType{TgtTypeKind::Arr, std::move(a), std::move(b), 0});
}

TgtTy code(TgtTy a, TgtTy b) {
  return std::make_shared<TgtType>(TgtType{TgtTypeKind::Code, std::move(a), std::move(b), 0});
}

TgtTy rigid(std::uint64_t id) {
  return std::make_shared<TgtType>(TgtType{TgtTypeKind::Rigid, nullptr, nullptr, id});
}

TgtTy fresh_rigid() { return rigid(fresh_stamp()); }

}  // namespace ttyp

bool type_equal(const SrcTy& a, const SrcTy& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SrcTypeKind::Nat:
    case SrcTypeKind::Unit:
      return true;
    case SrcTypeKind::Prod:
    case SrcTypeKind::Arr:
      return type_equal(a->a, b->a) && type_equal(a->b, b->b);
  }
  return false;
}

bool type_equal(const TgtTy& a, const TgtTy& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TgtTypeKind::Nat:
    case TgtTypeKind::Unit:
      return true;
    case TgtTypeKind::Rigid:
      return a->rigid_id == b->rigid_id;
    case TgtTypeKind::Prod:
    case TgtTypeKind::Arr:
    case TgtTypeKind::Code:
      return type_equal(a->a, b->a) && type_equal(a->b, b->b);
  }
  return false;
}

bool contains_rigid(const TgtTy& t, std::uint64_t id) {
  if (!t) return false;
  if (t->kind == TgtTypeKind::Rigid) return t->rigid_id == id;
  return contains_rigid(t->a, id) || contains_rigid(t->b, id);
}

bool contains_any_rigid(const TgtTy& t) {
  if (!t) return false;
  if (t->kind == TgtTypeKind::Rigid) return true;
  return contains_any_rigid(t->a) || contains_any_rigid(t->b);
}

}  // namespace fcc
