#include "aclens/model.hpp"

#include <algorithm>
#include <cstdio>

#include "aclens/errors.hpp"

namespace aclens {

Sid::Sid(std::string text, std::optional<std::string> display_name)
    : text_(std::move(text)), display_name_(std::move(display_name)) {
  if (!is_valid(text_)) {
    throw Error(ErrorCode::InvalidSid, "malformed SID '" + text_ + "'", text_);
  }
}

bool Sid::is_valid(std::string_view text) noexcept {
  if (text.size() < 2 || text[0] != 'S' || text[1] != '-') return false;
  std::size_t components = 0;
  std::size_t run = 0;
  for (std::size_t i = 2; i < text.size(); ++i) {
    char c = text[i];
    if (c == '-') {
      if (run == 0) return false;
      ++components;
      run = 0;
    } else if (c >= '0' && c <= '9') {
      ++run;
    } else {
      return false;
    }
  }
  if (run == 0) return false;
  ++components;
  // revision and identifier authority at minimum
  return components >= 2;
}

std::string_view to_string(PrincipalKind kind) noexcept {
  return kind == PrincipalKind::User ? "user" : "group";
}

AccessMask::AccessMask(std::uint32_t bits) : bits_(bits) {
  if (bits & kReservedBits) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", bits);
    throw Error(ErrorCode::BadMask, std::string("reserved bits 24-27 set in mask ") + buf);
  }
}

std::string AccessMask::to_hex() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08x", bits_);
  return buf;
}

bool InheritFlags::is_valid() const noexcept {
  if (inherit_only && !any_inherit()) return false;
  if (no_propagate && !any_inherit()) return false;
  return true;
}

void InheritFlags::validate() const {
  if (inherit_only && !any_inherit()) {
    throw Error(ErrorCode::BadFlags,
                "inherit_only requires container_inherit or object_inherit");
  }
  if (no_propagate && !any_inherit()) {
    throw Error(ErrorCode::BadFlags,
                "no_propagate requires container_inherit or object_inherit");
  }
}

std::vector<std::string> flag_names(const InheritFlags& flags) {
  std::vector<std::string> out;
  if (flags.container_inherit) out.emplace_back("container_inherit");
  if (flags.object_inherit) out.emplace_back("object_inherit");
  if (flags.no_propagate) out.emplace_back("no_propagate");
  if (flags.inherit_only) out.emplace_back("inherit_only");
  return out;
}

std::string_view to_string(AceKind kind) noexcept {
  return kind == AceKind::Allow ? "allow" : "deny";
}

Provenance Provenance::inherited(std::uint32_t distance) {
  if (distance == 0) {
    throw Error(ErrorCode::InvalidAce, "inherited provenance needs a distance of at least 1");
  }
  return Provenance(distance);
}

Ace::Ace(Sid principal, AceKind kind, AccessMask mask, InheritFlags flags, Provenance provenance)
    : principal_(std::move(principal)),
      kind_(kind),
      mask_(mask),
      flags_(flags),
      provenance_(provenance) {
  if (mask_.empty()) {
    throw Error(ErrorCode::InvalidAce, "ACE mask must be non-zero", principal_.text());
  }
  flags_.validate();
}

Ace Ace::inherited_copy(InheritFlags flags, std::uint32_t distance) const {
  return Ace(principal_, kind_, mask_, flags, Provenance::inherited(distance));
}

bool Ace::same_grant(const Ace& other) const noexcept {
  return principal_ == other.principal_ && kind_ == other.kind_ && mask_ == other.mask_ &&
         flags_ == other.flags_;
}

std::uint64_t precedence_tier(const Ace& ace) noexcept {
  const std::uint64_t deny_slot = ace.is_deny() ? 0 : 1;
  return std::uint64_t{ace.provenance().distance()} * 2 + deny_slot;
}

Acl canonicalize_acl(std::vector<Ace> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Ace& a, const Ace& b) {
    return precedence_tier(a) < precedence_tier(b);
  });
  return Acl{std::move(entries)};
}

bool acl_equal(const Acl& a, const Acl& b) noexcept {
  return std::equal(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                    [](const Ace& x, const Ace& y) { return x.same_grant(y); });
}

}  // namespace aclens
