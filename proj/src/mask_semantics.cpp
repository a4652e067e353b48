#include "aclens/mask_semantics.hpp"

#include <bit>

#include "aclens/errors.hpp"

namespace aclens {

namespace {

struct AttributeInfo {
  unsigned bit;
  std::string_view code;
  std::string_view name;
};

constexpr std::array<AttributeInfo, kAttributeCount> kTable = {{
    {0, "R", "ReadData"},
    {1, "W", "WriteData"},
    {2, "Ad", "AppendData"},
    {3, "Re", "ReadExtendedAttributes"},
    {4, "We", "WriteExtendedAttributes"},
    {5, "X", "Execute"},
    {6, "Dc", "DeleteChild"},
    {7, "Ra", "ReadAttributes"},
    {8, "Wa", "WriteAttributes"},
    {16, "D", "Delete"},
    {17, "Rp", "ReadPermissions"},
    {18, "Cp", "ChangePermissions"},
    {19, "To", "TakeOwnership"},
    {20, "Sy", "Synchronize"},
}};

const AttributeInfo& info(PermissionAttribute attr) noexcept {
  return kTable[static_cast<std::size_t>(attr)];
}

constexpr std::uint16_t ordinal_bit(PermissionAttribute attr) noexcept {
  return static_cast<std::uint16_t>(1u << static_cast<unsigned>(attr));
}

}  // namespace

unsigned attribute_bit(PermissionAttribute attr) noexcept { return info(attr).bit; }
std::string_view attribute_code(PermissionAttribute attr) noexcept { return info(attr).code; }
std::string_view attribute_name(PermissionAttribute attr) noexcept { return info(attr).name; }

std::optional<PermissionAttribute> attribute_from_name(std::string_view name) noexcept {
  for (PermissionAttribute attr : kAllAttributes) {
    if (info(attr).name == name) return attr;
  }
  return std::nullopt;
}

AttributeSet::AttributeSet(std::initializer_list<PermissionAttribute> attrs) noexcept {
  for (PermissionAttribute a : attrs) insert(a);
}

bool AttributeSet::contains(PermissionAttribute attr) const noexcept {
  return (ordinals_ & ordinal_bit(attr)) != 0;
}

void AttributeSet::insert(PermissionAttribute attr) noexcept { ordinals_ |= ordinal_bit(attr); }

void AttributeSet::erase(PermissionAttribute attr) noexcept {
  ordinals_ &= static_cast<std::uint16_t>(~ordinal_bit(attr));
}

std::size_t AttributeSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(ordinals_));
}

std::vector<PermissionAttribute> AttributeSet::to_vector() const {
  std::vector<PermissionAttribute> out;
  for (PermissionAttribute a : kAllAttributes) {
    if (contains(a)) out.push_back(a);
  }
  return out;
}

std::string_view to_string(CoarseLevel level) noexcept {
  switch (level) {
    case CoarseLevel::Read: return "Read";
    case CoarseLevel::Write: return "Write";
    case CoarseLevel::ListFolderContents: return "ListFolderContents";
    case CoarseLevel::ReadAndExecute: return "ReadAndExecute";
    case CoarseLevel::Modify: return "Modify";
    case CoarseLevel::FullControl: return "FullControl";
    case CoarseLevel::Special: return "Special";
  }
  return "Special";
}

std::optional<CoarseLevel> coarse_level_from_name(std::string_view name) noexcept {
  for (CoarseLevel level : kStandardLevels) {
    if (to_string(level) == name) return level;
  }
  return std::nullopt;
}

AccessMask canonical_mask(CoarseLevel level) {
  switch (level) {
    case CoarseLevel::Read: return AccessMask(masks::kRead);
    case CoarseLevel::Write: return AccessMask(masks::kWrite);
    case CoarseLevel::ListFolderContents:
    case CoarseLevel::ReadAndExecute: return AccessMask(masks::kReadAndExecute);
    case CoarseLevel::Modify: return AccessMask(masks::kModify);
    case CoarseLevel::FullControl: return AccessMask(masks::kFullControl);
    case CoarseLevel::Special: break;
  }
  throw Error(ErrorCode::BadMask, "Special has no canonical mask");
}

AccessMask normalize_generic(AccessMask mask) noexcept {
  std::uint32_t bits = mask.bits();
  std::uint32_t out = bits & ~AccessMask::kGenericBits;
  if (bits & masks::kGenericRead) out |= masks::kGenericReadExpansion;
  if (bits & masks::kGenericWrite) out |= masks::kGenericWriteExpansion;
  if (bits & masks::kGenericExecute) out |= masks::kGenericExecuteExpansion;
  if (bits & masks::kGenericAll) out |= masks::kGenericAllExpansion;
  return AccessMask(out);
}

AttributeSet attributes_of(AccessMask mask) {
  if (!mask.is_normalized()) {
    throw Error(ErrorCode::NotNormalized, "mask " + mask.to_hex() + " has generic bits set");
  }
  AttributeSet out;
  for (PermissionAttribute a : kAllAttributes) {
    if (mask.bits() & (1u << info(a).bit)) out.insert(a);
  }
  return out;
}

AccessMask mask_of(AttributeSet attrs) noexcept {
  std::uint32_t bits = 0;
  for (PermissionAttribute a : kAllAttributes) {
    if (attrs.contains(a)) bits |= 1u << info(a).bit;
  }
  return AccessMask(bits);
}

CoarseLevel classify_coarse(AccessMask mask, const InheritFlags& flags) {
  const std::uint32_t attrs = mask_of(attributes_of(mask)).bits();
  switch (attrs) {
    case masks::kFullControl: return CoarseLevel::FullControl;
    case masks::kModify: return CoarseLevel::Modify;
    case masks::kReadAndExecute:
      return flags.container_inherit && !flags.object_inherit ? CoarseLevel::ListFolderContents
                                                              : CoarseLevel::ReadAndExecute;
    case masks::kRead: return CoarseLevel::Read;
    case masks::kWrite: return CoarseLevel::Write;
    default: return CoarseLevel::Special;
  }
}

std::string compress_special(AccessMask mask) {
  const AttributeSet attrs = attributes_of(mask);
  if (attrs.empty()) {
    throw Error(ErrorCode::EmptyMask, "mask " + mask.to_hex() + " carries no attributes");
  }
  std::string out;
  for (PermissionAttribute a : attrs.to_vector()) {
    if (!out.empty()) out.push_back('-');
    out.append(info(a).code);
  }
  return out;
}

AccessMask parse_compressed(std::string_view text) {
  AttributeSet seen;
  std::size_t start = 0;
  while (true) {
    const auto dash = text.find('-', start);
    const std::string_view token =
        text.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    const AttributeInfo* match = nullptr;
    PermissionAttribute attr{};
    for (PermissionAttribute a : kAllAttributes) {
      if (info(a).code == token) {
        match = &info(a);
        attr = a;
        break;
      }
    }
    if (!match) {
      throw Error(ErrorCode::UnknownCode, "unknown attribute code '" + std::string(token) + "'",
                  std::string(token));
    }
    if (seen.contains(attr)) {
      throw Error(ErrorCode::DuplicateCode, "duplicate attribute code '" + std::string(token) + "'",
                  std::string(token));
    }
    seen.insert(attr);
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return mask_of(seen);
}

RenderedMask render_mask(AccessMask mask, const InheritFlags& flags) {
  const AccessMask normalized = normalize_generic(mask);
  const CoarseLevel level = classify_coarse(normalized, flags);
  if (level != CoarseLevel::Special) return {level, std::string(to_string(level))};
  if (attributes_of(normalized).empty()) return {level, normalized.to_hex()};
  return {level, compress_special(normalized)};
}

}  // namespace aclens
