#include "aclens/accumulation.hpp"

#include <set>

#include "aclens/errors.hpp"

namespace aclens {

namespace {

EffectiveResult evaluate(const Acl& acl, const std::set<Sid>& applicable) {
  EffectiveResult result;

  std::vector<std::size_t> relevant;
  AttributeSet mentioned;
  for (std::size_t i = 0; i < acl.entries.size(); ++i) {
    if (!applicable.contains(acl.entries[i].principal())) continue;
    relevant.push_back(i);
    mentioned = mentioned | attributes_of(acl.entries[i].mask());
  }

  for (std::size_t i : relevant) {
    const Ace& ace = acl.entries[i];
    if (!ace.is_explicit()) break;
    if (ace.is_deny() && !mentioned.empty() &&
        (attributes_of(ace.mask()) & mentioned) == mentioned) {
      result.short_circuited = true;
      break;
    }
  }

  AttributeSet granted;
  AttributeSet decided;
  for (std::size_t i : relevant) {
    const Ace& ace = acl.entries[i];
    const AttributeSet fresh = attributes_of(ace.mask()) - decided;
    if (fresh.empty()) continue;
    for (PermissionAttribute attr : fresh.to_vector()) {
      result.per_bit_provenance[static_cast<std::size_t>(attr)] = DecidingAce{i, ace};
    }
    if (ace.is_allow()) granted = granted | fresh;
    decided = decided | fresh;
    if (decided == AttributeSet::all()) break;
  }
  result.granted = mask_of(granted);
  return result;
}

}  // namespace

EffectiveResult effective_mask(const FsTree& tree, std::string_view path, const Sid& principal,
                               const GroupGraph& graph) {
  const NodeId id = tree.find(path);
  return evaluate(tree.acl(id), applicable_sids(graph, principal));
}

EffectiveReport effective_search(const FsTree& tree, std::string_view root, const Sid& principal,
                                 const GroupGraph& graph, bool suppress_unchanged) {
  const NodeId start = tree.find(root);
  if (tree.node(start).kind != NodeKind::Folder) {
    throw Error(ErrorCode::NotAFolder, "'" + tree.path(start) + "' is not a folder",
                std::string(root));
  }
  const std::set<Sid> applicable = applicable_sids(graph, principal);

  EffectiveReport report;
  for (NodeId id = start; id < tree.subtree_end(start); ++id) {
    if (tree.node(id).kind != NodeKind::Folder) continue;
    if (id != start && suppress_unchanged && acl_equal(tree.acl(id), tree.acl(*tree.parent(id)))) {
      continue;
    }
    const AccessMask granted = evaluate(tree.acl(id), applicable).granted;
    EffectiveRow row{tree.path(id), granted, CoarseLevel::Special, "none"};
    if (!granted.empty()) {
      const RenderedMask r = render_mask(granted, {});
      row.level = r.level;
      row.rendered = r.text;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace aclens
