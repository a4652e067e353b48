#pragma once

// Security-descriptor data model: identities, access masks, entries and lists.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aclens {

/// Security identifier, e.g. "S-1-5-32-545". Compared and hashed by text only.
class Sid {
 public:
  explicit Sid(std::string text, std::optional<std::string> display_name = std::nullopt);

  static bool is_valid(std::string_view text) noexcept;

  const std::string& text() const noexcept { return text_; }
  const std::optional<std::string>& display_name() const noexcept { return display_name_; }

  /// Display name when known, the SID text otherwise.
  const std::string& label() const noexcept { return display_name_ ? *display_name_ : text_; }

  friend bool operator==(const Sid& a, const Sid& b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const Sid& a, const Sid& b) noexcept {
    return a.text_ <=> b.text_;
  }

 private:
  std::string text_;
  std::optional<std::string> display_name_;
};

enum class PrincipalKind { User, Group };

std::string_view to_string(PrincipalKind kind) noexcept;

struct Principal {
  Sid sid;
  PrincipalKind kind;
};

/// The fourteen fine-grained permission attributes, in table order.
enum class PermissionAttribute : std::uint8_t {
  ReadData,
  WriteData,
  AppendData,
  ReadExtendedAttributes,
  WriteExtendedAttributes,
  Execute,
  DeleteChild,
  ReadAttributes,
  WriteAttributes,
  Delete,
  ReadPermissions,
  ChangePermissions,
  TakeOwnership,
  Synchronize,
};

inline constexpr std::size_t kAttributeCount = 14;

/// 32-bit access mask. Reserved bits 24-27 are never set.
class AccessMask {
 public:
  static constexpr std::uint32_t kReservedBits = 0x0F000000u;
  static constexpr std::uint32_t kGenericBits = 0xF0000000u;

  constexpr AccessMask() noexcept = default;
  /// Throws Error(BadMask) when any reserved bit is set.
  explicit AccessMask(std::uint32_t bits);

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool is_normalized() const noexcept { return (bits_ & kGenericBits) == 0; }
  constexpr bool contains(AccessMask other) const noexcept {
    return (bits_ & other.bits_) == other.bits_;
  }

  friend AccessMask operator|(AccessMask a, AccessMask b) noexcept { return raw(a.bits_ | b.bits_); }
  friend AccessMask operator&(AccessMask a, AccessMask b) noexcept { return raw(a.bits_ & b.bits_); }
  friend constexpr bool operator==(AccessMask a, AccessMask b) noexcept = default;

  /// "0x" followed by eight lowercase hex digits.
  std::string to_hex() const;

 private:
  static AccessMask raw(std::uint32_t bits) noexcept {
    AccessMask m;
    m.bits_ = bits;
    return m;
  }
  std::uint32_t bits_ = 0;
};

struct InheritFlags {
  bool container_inherit = false;
  bool object_inherit = false;
  bool no_propagate = false;
  bool inherit_only = false;

  bool any_inherit() const noexcept { return container_inherit || object_inherit; }
  bool is_valid() const noexcept;
  /// Throws Error(BadFlags) with a description of the violated rule.
  void validate() const;

  friend bool operator==(const InheritFlags&, const InheritFlags&) = default;
};

/// Flag names in their fixed serialization order.
std::vector<std::string> flag_names(const InheritFlags& flags);

enum class AceKind { Allow, Deny };

std::string_view to_string(AceKind kind) noexcept;

/// Explicit entries have distance 0; inherited ones record how many levels
/// separate them from the explicit source.
class Provenance {
 public:
  static constexpr Provenance explicit_entry() noexcept { return Provenance(0); }
  /// Throws Error(InvalidAce) for distance 0.
  static Provenance inherited(std::uint32_t distance);

  constexpr bool is_explicit() const noexcept { return distance_ == 0; }
  constexpr std::uint32_t distance() const noexcept { return distance_; }

  friend constexpr bool operator==(Provenance, Provenance) noexcept = default;

 private:
  constexpr explicit Provenance(std::uint32_t d) noexcept : distance_(d) {}
  std::uint32_t distance_;
};

class Ace {
 public:
  /// Throws Error(InvalidAce) for an empty mask and Error(BadFlags) for an
  /// invalid flag combination.
  Ace(Sid principal, AceKind kind, AccessMask mask, InheritFlags flags = {},
      Provenance provenance = Provenance::explicit_entry());

  const Sid& principal() const noexcept { return principal_; }
  AceKind kind() const noexcept { return kind_; }
  AccessMask mask() const noexcept { return mask_; }
  const InheritFlags& flags() const noexcept { return flags_; }
  Provenance provenance() const noexcept { return provenance_; }

  bool is_allow() const noexcept { return kind_ == AceKind::Allow; }
  bool is_deny() const noexcept { return kind_ == AceKind::Deny; }
  bool is_explicit() const noexcept { return provenance_.is_explicit(); }

  /// Same principal, kind and mask with new flags and provenance.
  Ace inherited_copy(InheritFlags flags, std::uint32_t distance) const;

  /// Equal on (principal, kind, mask, flags); provenance ignored.
  bool same_grant(const Ace& other) const noexcept;

  friend bool operator==(const Ace&, const Ace&) = default;

 private:
  Sid principal_;
  AceKind kind_;
  AccessMask mask_;
  InheritFlags flags_;
  Provenance provenance_;
};

/// Position of an entry in the precedence order: explicit deny (0),
/// explicit allow (1), then deny/allow pairs per inheritance distance.
std::uint64_t precedence_tier(const Ace& ace) noexcept;

struct Acl {
  std::vector<Ace> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }

  friend bool operator==(const Acl&, const Acl&) = default;
};

/// Stable sort into canonical precedence order.
Acl canonicalize_acl(std::vector<Ace> entries);

/// Elementwise equality of canonical ACLs ignoring inheritance distance.
bool acl_equal(const Acl& a, const Acl& b) noexcept;

}  // namespace aclens

template <>
struct std::hash<aclens::Sid> {
  std::size_t operator()(const aclens::Sid& sid) const noexcept {
    return std::hash<std::string>{}(sid.text());
  }
};
