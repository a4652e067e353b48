#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aclens/model.hpp"

namespace aclens {

struct Membership {
  Sid member;
  Sid group;
};

/// Directed membership graph: an edge member -> group says the member
/// belongs to the group. Cycles are allowed; every closure is cycle-safe.
class GroupGraph {
 public:
  GroupGraph() = default;
  /// Throws UnknownSid for undeclared edge endpoints, NotAGroup when the
  /// group endpoint is a user, InvalidSid for self-edges or duplicate SIDs.
  GroupGraph(std::vector<Principal> principals, const std::vector<Membership>& edges);

  const std::vector<Principal>& principals() const noexcept { return principals_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool contains(const Sid& sid) const noexcept { return ids_.contains(sid.text()); }
  /// Throws UnknownPrincipal.
  const Principal& principal(const Sid& sid) const;
  /// Display name from the principal directory, or the SID text.
  const std::string& label(const Sid& sid) const noexcept;

  /// Groups taking part in at least one membership cycle, sorted.
  std::vector<Sid> cyclic_groups() const;

  /// Direct groups of a principal, sorted by SID.
  std::vector<Sid> direct_groups(const Sid& sid) const;

 private:
  friend std::set<Sid> member_of_closure(const GroupGraph&, const Sid&);
  friend std::set<Sid> members_closure(const GroupGraph&, const Sid&);
  friend std::optional<std::vector<Sid>> membership_chain(const GroupGraph&, const Sid&,
                                                          const Sid&);

  std::size_t require(const Sid& sid) const;
  std::vector<std::size_t> reach(std::size_t start,
                                 const std::vector<std::vector<std::size_t>>& adjacency) const;

  std::vector<Principal> principals_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::vector<std::size_t>> groups_of_;   // member -> groups
  std::vector<std::vector<std::size_t>> members_of_;  // group -> members
  std::size_t edge_count_ = 0;
};

/// All groups reachable from sid through member -> group edges, excluding
/// sid itself. Throws UnknownPrincipal.
std::set<Sid> member_of_closure(const GroupGraph& graph, const Sid& sid);

/// All principals reachable from a group through reverse edges, excluding
/// the group itself. Throws UnknownPrincipal or NotAGroup.
std::set<Sid> members_closure(const GroupGraph& graph, const Sid& sid);

/// {sid} plus member_of_closure(sid): the SIDs whose entries apply to sid.
std::set<Sid> applicable_sids(const GroupGraph& graph, const Sid& sid);

/// Shortest membership chain [from, g1, ..., to], or nullopt when `to` is
/// not reachable. A principal reaches itself with the chain [from].
std::optional<std::vector<Sid>> membership_chain(const GroupGraph& graph, const Sid& from,
                                                 const Sid& to);

}  // namespace aclens
