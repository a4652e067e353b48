#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace aclens::oracle {

namespace {

std::vector<std::vector<bool>> closure_matrix(const std::vector<Principal>& principals,
                                              const std::vector<Membership>& edges,
                                              std::map<std::string, std::size_t>& index) {
  for (std::size_t i = 0; i < principals.size(); ++i) index[principals[i].sid.text()] = i;
  const std::size_t n = principals.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& e : edges) reach[index.at(e.member.text())][index.at(e.group.text())] = true;
  // Warshall
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

constexpr std::uint32_t kAttributeBits[] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 16, 17, 18, 19, 20};

}  // namespace

std::set<std::string> reachable_groups(const std::vector<Principal>& principals,
                                       const std::vector<Membership>& edges,
                                       const std::string& from) {
  std::map<std::string, std::size_t> index;
  const auto reach = closure_matrix(principals, edges, index);
  std::set<std::string> out;
  const std::size_t i = index.at(from);
  for (std::size_t j = 0; j < principals.size(); ++j) {
    if (reach[i][j] && j != i) out.insert(principals[j].sid.text());
  }
  return out;
}

std::set<std::string> reachable_members(const std::vector<Principal>& principals,
                                        const std::vector<Membership>& edges,
                                        const std::string& group) {
  std::map<std::string, std::size_t> index;
  const auto reach = closure_matrix(principals, edges, index);
  std::set<std::string> out;
  const std::size_t j = index.at(group);
  for (std::size_t i = 0; i < principals.size(); ++i) {
    if (reach[i][j] && i != j) out.insert(principals[i].sid.text());
  }
  return out;
}

AccessMask brute_force_effective(const FsTree& tree, std::string_view path, const Sid& principal,
                                 const std::vector<Principal>& principals,
                                 const std::vector<Membership>& edges) {
  std::set<std::string> applicable = reachable_groups(principals, edges, principal.text());
  applicable.insert(principal.text());

  const Acl& acl = tree.acl(path);
  std::uint32_t granted = 0;
  for (std::uint32_t bit : kAttributeBits) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    bool allow = false;
    for (const Ace& ace : acl.entries) {
      if (!applicable.contains(ace.principal().text())) continue;
      if (!(ace.mask().bits() & (1u << bit))) continue;
      const std::uint64_t d = ace.provenance().distance();
      const std::uint64_t tier = d == 0 ? (ace.is_deny() ? 0 : 1) : (ace.is_deny() ? 2 + 2 * d : 3 + 2 * d);
      if (tier < best) {
        best = tier;
        allow = ace.is_allow();
      }
    }
    if (allow) granted |= 1u << bit;
  }
  return AccessMask(granted);
}

std::vector<ExpectedEntry> expected_acl(const FsTree& tree, NodeId id) {
  std::vector<ExpectedEntry> out;
  const bool target_is_file = tree.node(id).kind == NodeKind::File;
  std::uint32_t k = 0;
  for (std::optional<NodeId> at = id; at; at = tree.parent(*at), ++k) {
    for (const Ace& e : tree.node(*at).explicit_aces) {
      const InheritFlags& f = e.flags();
      bool reaches = false;
      InheritFlags copy{};
      if (k == 0) {
        reaches = !f.inherit_only;
        copy = f;
      } else if (target_is_file) {
        reaches = f.object_inherit && (k == 1 || !f.no_propagate);
      } else {
        reaches = f.container_inherit && (k == 1 || !f.no_propagate);
        if (reaches && !f.no_propagate) copy = InheritFlags{true, f.object_inherit, false, false};
      }
      if (!reaches) continue;
      const std::uint64_t tier = std::uint64_t{k} * 2 + (e.is_deny() ? 0 : 1);
      out.push_back(ExpectedEntry{tier, e.principal().text(), e.is_allow(), e.mask().bits(),
                                  copy.container_inherit, copy.object_inherit, copy.no_propagate,
                                  copy.inherit_only});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExpectedEntry> reduce(const Acl& acl) {
  std::vector<ExpectedEntry> out;
  for (const Ace& a : acl.entries) {
    const std::uint64_t tier = std::uint64_t{a.provenance().distance()} * 2 + (a.is_deny() ? 0 : 1);
    const InheritFlags& f = a.flags();
    out.push_back(ExpectedEntry{tier, a.principal().text(), a.is_allow(), a.mask().bits(),
                                f.container_inherit, f.object_inherit, f.no_propagate,
                                f.inherit_only});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aclens::oracle
