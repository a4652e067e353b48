#pragma once

/**
 * @file mask_semantics.hpp
 * @brief Bit layout of the access mask, coarse-grained levels and the
 * short-code rendering of special permissions.
 *
 * Attribute bits follow the NTFS specific/standard rights layout:
 *
 *   bit  0  ReadData                 R
 *   bit  1  WriteData                W
 *   bit  2  AppendData               Ad
 *   bit  3  ReadExtendedAttributes   Re
 *   bit  4  WriteExtendedAttributes  We
 *   bit  5  Execute                  X
 *   bit  6  DeleteChild              Dc
 *   bit  7  ReadAttributes           Ra
 *   bit  8  WriteAttributes          Wa
 *   bit 16  Delete                   D
 *   bit 17  ReadPermissions          Rp
 *   bit 18  ChangePermissions        Cp
 *   bit 19  TakeOwnership            To
 *   bit 20  Synchronize              Sy
 *
 * Bit 23 (access system security) is representable but is not an attribute.
 * Bits 28-31 are the generic rights expanded by normalize_generic().
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aclens/model.hpp"

namespace aclens {

inline constexpr std::array<PermissionAttribute, kAttributeCount> kAllAttributes = {
    PermissionAttribute::ReadData,
    PermissionAttribute::WriteData,
    PermissionAttribute::AppendData,
    PermissionAttribute::ReadExtendedAttributes,
    PermissionAttribute::WriteExtendedAttributes,
    PermissionAttribute::Execute,
    PermissionAttribute::DeleteChild,
    PermissionAttribute::ReadAttributes,
    PermissionAttribute::WriteAttributes,
    PermissionAttribute::Delete,
    PermissionAttribute::ReadPermissions,
    PermissionAttribute::ChangePermissions,
    PermissionAttribute::TakeOwnership,
    PermissionAttribute::Synchronize,
};

unsigned attribute_bit(PermissionAttribute attr) noexcept;
std::string_view attribute_code(PermissionAttribute attr) noexcept;
std::string_view attribute_name(PermissionAttribute attr) noexcept;
std::optional<PermissionAttribute> attribute_from_name(std::string_view name) noexcept;

/// Set of permission attributes, iterated in table order.
class AttributeSet {
 public:
  constexpr AttributeSet() noexcept = default;
  AttributeSet(std::initializer_list<PermissionAttribute> attrs) noexcept;

  static constexpr AttributeSet from_ordinals(std::uint16_t ordinals) noexcept {
    AttributeSet s;
    s.ordinals_ = ordinals & kAllOrdinals;
    return s;
  }
  static constexpr AttributeSet all() noexcept { return from_ordinals(kAllOrdinals); }

  constexpr std::uint16_t ordinals() const noexcept { return ordinals_; }
  bool contains(PermissionAttribute attr) const noexcept;
  void insert(PermissionAttribute attr) noexcept;
  void erase(PermissionAttribute attr) noexcept;
  constexpr bool empty() const noexcept { return ordinals_ == 0; }
  std::size_t size() const noexcept;
  std::vector<PermissionAttribute> to_vector() const;

  friend constexpr AttributeSet operator|(AttributeSet a, AttributeSet b) noexcept {
    return from_ordinals(a.ordinals_ | b.ordinals_);
  }
  friend constexpr AttributeSet operator&(AttributeSet a, AttributeSet b) noexcept {
    return from_ordinals(a.ordinals_ & b.ordinals_);
  }
  /// Set difference.
  friend constexpr AttributeSet operator-(AttributeSet a, AttributeSet b) noexcept {
    return from_ordinals(a.ordinals_ & static_cast<std::uint16_t>(~b.ordinals_));
  }
  friend constexpr bool operator==(AttributeSet, AttributeSet) noexcept = default;

 private:
  static constexpr std::uint16_t kAllOrdinals = (1u << kAttributeCount) - 1;
  std::uint16_t ordinals_ = 0;
};

namespace masks {
inline constexpr std::uint32_t kAccessSystemSecurity = 1u << 23;
inline constexpr std::uint32_t kGenericAll = 1u << 28;
inline constexpr std::uint32_t kGenericExecute = 1u << 29;
inline constexpr std::uint32_t kGenericWrite = 1u << 30;
inline constexpr std::uint32_t kGenericRead = 1u << 31;

/// Union of the fourteen attribute bits.
inline constexpr std::uint32_t kAllAttributes = 0x001F01FFu;

inline constexpr std::uint32_t kGenericReadExpansion = 0x00120089u;
inline constexpr std::uint32_t kGenericWriteExpansion = 0x00120116u;
inline constexpr std::uint32_t kGenericExecuteExpansion = 0x001200A0u;
inline constexpr std::uint32_t kGenericAllExpansion = kAllAttributes;

inline constexpr std::uint32_t kRead = kGenericReadExpansion;
inline constexpr std::uint32_t kWrite = kGenericWriteExpansion;
inline constexpr std::uint32_t kReadAndExecute = kRead | kGenericExecuteExpansion;
inline constexpr std::uint32_t kModify = kReadAndExecute | kWrite | (1u << 16);
inline constexpr std::uint32_t kFullControl = kAllAttributes;
}  // namespace masks

enum class CoarseLevel {
  Read,
  Write,
  ListFolderContents,
  ReadAndExecute,
  Modify,
  FullControl,
  Special,
};

inline constexpr std::array<CoarseLevel, 6> kStandardLevels = {
    CoarseLevel::Read,           CoarseLevel::Write,  CoarseLevel::ListFolderContents,
    CoarseLevel::ReadAndExecute, CoarseLevel::Modify, CoarseLevel::FullControl,
};

std::string_view to_string(CoarseLevel level) noexcept;
std::optional<CoarseLevel> coarse_level_from_name(std::string_view name) noexcept;

/// Attribute mask of a standard level. ListFolderContents shares the
/// ReadAndExecute mask. Special has no canonical mask.
AccessMask canonical_mask(CoarseLevel level);

/// Replaces generic bits 28-31 with their attribute expansions.
AccessMask normalize_generic(AccessMask mask) noexcept;

/// Attributes whose bits are set. Non-attribute bits (9-15, 21-23) are
/// ignored. Throws NotNormalized when generic bits are present.
AttributeSet attributes_of(AccessMask mask);

AccessMask mask_of(AttributeSet attrs) noexcept;

/// Standard level whose canonical set equals the mask's attributes exactly,
/// Special otherwise. The ReadAndExecute set is reported as
/// ListFolderContents when the entry inherits to folders only.
CoarseLevel classify_coarse(AccessMask mask, const InheritFlags& flags);

/// Hyphen-joined attribute codes in table order, e.g. "R-W-Dc-Rp-Cp".
/// Throws EmptyMask when the mask carries no attribute.
std::string compress_special(AccessMask mask);

/// Inverse of compress_special. Throws UnknownCode or DuplicateCode.
AccessMask parse_compressed(std::string_view text);

/// Level name for standard levels, compressed codes for Special.
struct RenderedMask {
  CoarseLevel level;
  std::string text;
};
RenderedMask render_mask(AccessMask mask, const InheritFlags& flags);

}  // namespace aclens
