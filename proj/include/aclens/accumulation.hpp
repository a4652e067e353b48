#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aclens/fs_tree.hpp"
#include "aclens/mask_semantics.hpp"
#include "aclens/membership.hpp"

namespace aclens {

/// The entry that settled one attribute, referenced by its position in the
/// materialized ACL of the evaluated path.
struct DecidingAce {
  std::size_t acl_index;
  Ace ace;
};

struct EffectiveResult {
  AccessMask granted;
  /// Indexed by attribute ordinal; nullopt when no applicable entry
  /// mentions the attribute.
  std::array<std::optional<DecidingAce>, kAttributeCount> per_bit_provenance;
  /// An explicit deny covered every attribute the applicable entries mention.
  bool short_circuited = false;

  const std::optional<DecidingAce>& provenance(PermissionAttribute attr) const {
    return per_bit_provenance[static_cast<std::size_t>(attr)];
  }
};

/// Effective permission of a principal at a path.
///
/// The applicable entries are those of the canonical ACL whose principal is
/// the subject or one of its transitive groups. Each attribute is settled by
/// the first applicable entry, in canonical order, whose mask contains it:
/// deny revokes, allow grants. Unmentioned attributes are not granted.
///
/// Throws PathNotFound or UnknownPrincipal.
EffectiveResult effective_mask(const FsTree& tree, std::string_view path, const Sid& principal,
                               const GroupGraph& graph);

struct EffectiveRow {
  std::string path;
  AccessMask granted;
  /// Level of the granted mask evaluated without inheritance flags.
  CoarseLevel level;
  /// Level name, compressed codes, or "none" for an empty grant.
  std::string rendered;
};

struct EffectiveReport {
  std::vector<EffectiveRow> rows;
};

/// Depth-first effective permissions over the folders under root, parent
/// before children, siblings by name. The start folder is always reported;
/// with suppress_unchanged, other folders are reported only when their ACL
/// differs from their parent's.
///
/// Throws PathNotFound, NotAFolder or UnknownPrincipal.
EffectiveReport effective_search(const FsTree& tree, std::string_view root, const Sid& principal,
                                 const GroupGraph& graph, bool suppress_unchanged);

}  // namespace aclens
