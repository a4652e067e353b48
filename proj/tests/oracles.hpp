#pragma once

// Independent reference implementations used only by tests. None of these
// call the engine routine they check.

#include <set>
#include <string>
#include <vector>

#include "aclens/fs_tree.hpp"
#include "aclens/membership.hpp"

namespace aclens::oracle {

/// Transitive closure of member -> group edges via a Warshall reachability
/// matrix over the flat edge list.
std::set<std::string> reachable_groups(const std::vector<Principal>& principals,
                                       const std::vector<Membership>& edges,
                                       const std::string& from);

/// Principals that reach `group` (reverse closure), via the same matrix.
std::set<std::string> reachable_members(const std::vector<Principal>& principals,
                                        const std::vector<Membership>& edges,
                                        const std::string& group);

/// Per attribute: the minimum-tier applicable entry decides. Tiers are
/// 0 explicit deny, 1 explicit allow, 2+2d inherited deny, 3+2d inherited
/// allow at distance d. Applicable principals come from reachable_groups.
AccessMask brute_force_effective(const FsTree& tree, std::string_view path, const Sid& principal,
                                 const std::vector<Principal>& principals,
                                 const std::vector<Membership>& edges);

/// One entry of an expected ACL, reduced to comparable fields.
struct ExpectedEntry {
  std::uint64_t tier;
  std::string principal;
  bool allow;
  std::uint32_t mask;
  bool ci, oi, np, io;

  auto operator<=>(const ExpectedEntry&) const = default;
};

/// Pull-based propagation: for every ancestor-or-self and every explicit
/// entry on it, decides from the flags and the path between them whether the
/// entry reaches `id`, and with which flags and distance. Sorted.
std::vector<ExpectedEntry> expected_acl(const FsTree& tree, NodeId id);

/// The materialized ACL at id reduced and sorted like expected_acl().
std::vector<ExpectedEntry> reduce(const Acl& acl);

}  // namespace aclens::oracle
