#include "aclens/traversal.hpp"

#include <algorithm>
#include <tuple>

#include "aclens/errors.hpp"

namespace aclens {

namespace {

NodeId require_folder(const FsTree& tree, std::string_view root) {
  const NodeId start = tree.find(root);
  if (tree.node(start).kind != NodeKind::Folder) {
    throw Error(ErrorCode::NotAFolder, "'" + tree.path(start) + "' is not a folder",
                std::string(root));
  }
  return start;
}

bool row_visible(const FsTree& tree, NodeId start, NodeId id, bool include_unchanged) {
  if (id == start || include_unchanged) return true;
  return !acl_equal(tree.acl(id), tree.acl(*tree.parent(id)));
}

template <typename Keep, typename Decorate>
TraversalReport walk(const FsTree& tree, NodeId start, bool include_unchanged, bool include_files,
                     bool drop_empty, Keep keep, Decorate decorate) {
  TraversalReport report;
  for (NodeId id = start; id < tree.subtree_end(start); ++id) {
    if (!include_files && tree.node(id).kind == NodeKind::File) continue;
    if (!row_visible(tree, start, id, include_unchanged)) continue;
    ReportRow row{tree.path(id), {}};
    for (const Ace& ace : tree.acl(id).entries) {
      if (!keep(ace)) continue;
      row.entries.push_back(make_entry(ace));
      decorate(row.entries.back());
    }
    if (drop_empty && row.entries.empty()) continue;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ReportEntry make_entry(const Ace& ace) {
  const RenderedMask r = render_mask(ace.mask(), ace.flags());
  return ReportEntry{ace.principal(), ace.kind(),       ace.mask(),  r.level, r.text,
                     ace.provenance(), ace.flags(), {}};
}

TraversalReport traverse_report(const FsTree& tree, std::string_view root,
                                const TraversalOptions& options) {
  const NodeId start = require_folder(tree, root);
  return walk(
      tree, start, options.include_unchanged, options.include_files, false,
      [&](const Ace& ace) { return !options.filter.contains(ace.principal()); },
      [](ReportEntry&) {});
}

TraversalReport per_principal_report(const FsTree& tree, std::string_view root,
                                     const Sid& principal, const GroupGraph& graph,
                                     bool include_files) {
  const NodeId start = require_folder(tree, root);
  const std::set<Sid> applicable = applicable_sids(graph, principal);
  return walk(
      tree, start, false, include_files, true,
      [&](const Ace& ace) { return applicable.contains(ace.principal()); },
      [&](ReportEntry& entry) {
        if (entry.principal == principal) return;
        if (auto chain = membership_chain(graph, principal, entry.principal)) {
          entry.match_chain = std::move(*chain);
        }
      });
}

std::vector<Finding> audit_shadowed_denies(const FsTree& tree, std::string_view root,
                                           const GroupGraph& graph) {
  const NodeId start = require_folder(tree, root);
  std::vector<Finding> findings;

  for (NodeId id = start; id < tree.subtree_end(start); ++id) {
    if (tree.node(id).kind != NodeKind::Folder) continue;
    const Acl& acl = tree.acl(id);
    for (const Ace& allow : acl.entries) {
      if (!allow.is_explicit() || !allow.is_allow()) continue;
      const std::set<Sid> applicable = graph.contains(allow.principal())
                                           ? applicable_sids(graph, allow.principal())
                                           : std::set<Sid>{allow.principal()};
      AttributeSet refused;
      for (const Ace& ace : acl.entries) {
        if (ace.is_explicit() && ace.is_deny() && applicable.contains(ace.principal())) {
          refused = refused | attributes_of(ace.mask());
        }
      }
      const AttributeSet allowed = attributes_of(allow.mask()) - refused;
      if (allowed.empty()) continue;

      for (const Ace& deny : acl.entries) {
        if (deny.is_explicit() || !deny.is_deny()) continue;
        if (!applicable.contains(deny.principal())) continue;
        const AttributeSet shadowed = allowed & attributes_of(deny.mask());
        if (shadowed.empty()) continue;
        NodeId source = id;
        for (std::uint32_t step = 0; step < deny.provenance().distance(); ++step) {
          source = *tree.parent(source);
        }
        findings.push_back(
            Finding{tree.path(id), allow.principal(), shadowed, tree.path(source), deny, allow});
      }
    }
  }
  // Rows are produced in depth-first order; sort by (path, principal) with
  // the walk order preserved among ties.
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.path, a.principal) < std::tie(b.path, b.principal);
  });
  return findings;
}

}  // namespace aclens
