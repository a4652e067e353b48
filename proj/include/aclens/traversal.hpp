#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aclens/fs_tree.hpp"
#include "aclens/mask_semantics.hpp"
#include "aclens/membership.hpp"

namespace aclens {

struct ReportEntry {
  Sid principal;
  AceKind kind;
  AccessMask mask;
  CoarseLevel level;
  /// Level name, or the compressed code string when level is Special.
  std::string rendered;
  Provenance provenance;
  InheritFlags flags;
  /// Per-principal reports only: membership chain from the searched
  /// principal to the entry's principal when the match came through groups.
  std::vector<Sid> match_chain;
};

ReportEntry make_entry(const Ace& ace);

struct ReportRow {
  std::string path;
  std::vector<ReportEntry> entries;
};

struct TraversalReport {
  std::vector<ReportRow> rows;
};

struct TraversalOptions {
  /// Entries whose principal is in this set are left out (exact SID match).
  std::set<Sid> filter;
  /// Report every node, not just those whose ACL differs from the parent's.
  bool include_unchanged = false;
  bool include_files = false;
};

/// Depth-first ACL report under root. The root row is always present; other
/// rows appear only when their ACL differs from the parent's unless
/// include_unchanged is set.
///
/// Throws PathNotFound or NotAFolder.
TraversalReport traverse_report(const FsTree& tree, std::string_view root,
                                const TraversalOptions& options = {});

/// As traverse_report, but keeps only entries whose principal applies to the
/// given principal (itself or a transitive group) and drops rows left empty.
///
/// Throws PathNotFound, NotAFolder or UnknownPrincipal.
TraversalReport per_principal_report(const FsTree& tree, std::string_view root,
                                     const Sid& principal, const GroupGraph& graph,
                                     bool include_files = false);

/// An explicit allow that takes precedence over an inherited deny applying
/// to the same principal.
struct Finding {
  std::string path;
  Sid principal;
  AttributeSet shadowed_attributes;
  std::string deny_source_path;
  Ace deny_ace;
  Ace allow_ace;
};

/// Every folder under root where an explicit allow outranks an inherited
/// deny for overlapping attributes. Attributes already refused by an
/// explicit deny applying to the allow's principal are not reported, since
/// the allow does not take effect for them. Sorted by path, then principal.
///
/// Throws PathNotFound or NotAFolder.
std::vector<Finding> audit_shadowed_denies(const FsTree& tree, std::string_view root,
                                           const GroupGraph& graph);

}  // namespace aclens
