#include "aclens/propagation.hpp"

#include <algorithm>
#include <memory>

#include "aclens/errors.hpp"

namespace aclens {

namespace {

// What a node hands down to its children. Explicit entries keep distance 0.
struct Propagator {
  const Ace* source;
  InheritFlags flags;
  std::uint32_t distance;
};

}  // namespace

FsTree materialize_inheritance(FsTree tree) {
  const std::size_t n = tree.size();
  auto acls = std::make_shared<std::vector<Acl>>(n);
  std::vector<std::vector<Propagator>> handed_down(n);

  for (NodeId id = 0; id < n; ++id) {
    const FsNode& node = tree.node(id);
    std::vector<Ace> entries;
    std::vector<Propagator>& mine = handed_down[id];

    for (const Ace& ace : node.explicit_aces) {
      if (!ace.flags().inherit_only) entries.push_back(ace);
      if (ace.flags().any_inherit()) mine.push_back({&ace, ace.flags(), 0});
    }

    if (auto parent = tree.parent(id)) {
      for (const Propagator& p : handed_down[*parent]) {
        const std::uint32_t distance = p.distance + 1;
        const InheritFlags& f = p.flags;
        if (node.kind == NodeKind::File) {
          if (f.object_inherit) entries.push_back(p.source->inherited_copy({}, distance));
          continue;
        }
        if (f.no_propagate) {
          if (f.container_inherit) entries.push_back(p.source->inherited_copy({}, distance));
          continue;
        }
        if (f.container_inherit) {
          const InheritFlags kept{true, f.object_inherit, false, false};
          entries.push_back(p.source->inherited_copy(kept, distance));
          mine.push_back({p.source, kept, distance});
        } else if (f.object_inherit) {
          // Passes through the folder to reach its files.
          mine.push_back({p.source, InheritFlags{false, true, false, true}, distance});
        }
      }
    }

    (*acls)[id] = canonicalize_acl(std::move(entries));

    // Release a parent's hand-down list once its last child is done.
    if (auto parent = tree.parent(id); parent && tree.subtree_end(id) == tree.subtree_end(*parent)) {
      std::vector<Propagator>().swap(handed_down[*parent]);
    }
  }

  tree.acls_ = std::move(acls);
  return tree;
}

std::uint32_t distance_of(const FsTree& tree, std::string_view path, const Ace& ace) {
  const Acl& acl = tree.acl(path);
  auto it = std::find(acl.entries.begin(), acl.entries.end(), ace);
  if (it == acl.entries.end()) {
    throw Error(ErrorCode::AceNotPresent,
                "entry for " + ace.principal().text() + " is not in the ACL at " + std::string(path),
                std::string(path));
  }
  return it->provenance().distance();
}

}  // namespace aclens
