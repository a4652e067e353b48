#include "aclens/report_format.hpp"

#include <algorithm>

namespace aclens::format {

namespace {

json flags_json(const InheritFlags& flags) {
  json out = json::array();
  for (const auto& name : flag_names(flags)) out.push_back(name);
  return out;
}

std::string flags_text(const InheritFlags& flags) {
  std::string out;
  for (const auto& name : flag_names(flags)) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out.empty() ? "-" : out;
}

json attribute_names(AttributeSet attrs) {
  json out = json::array();
  for (PermissionAttribute a : attrs.to_vector()) out.push_back(std::string(attribute_name(a)));
  return out;
}

std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string rendered_or_none(AccessMask granted) {
  return granted.empty() ? "none" : render_mask(granted, {}).text;
}

}  // namespace

std::string provenance_text(Provenance provenance) {
  if (provenance.is_explicit()) return "explicit";
  return "inherited(" + std::to_string(provenance.distance()) + ")";
}

json entry_json(const ReportEntry& entry, const GroupGraph& graph) {
  json chain = json::array();
  for (const Sid& sid : entry.match_chain) chain.push_back(sid.text());
  return json{{"principal", entry.principal.text()},
              {"display_name", graph.label(entry.principal)},
              {"kind", std::string(to_string(entry.kind))},
              {"level", std::string(to_string(entry.level))},
              {"rendered", entry.rendered},
              {"mask", entry.mask.to_hex()},
              {"provenance", entry.provenance.is_explicit() ? "explicit" : "inherited"},
              {"distance", entry.provenance.distance()},
              {"flags", flags_json(entry.flags)},
              {"match_chain", std::move(chain)}};
}

json row_json(const ReportRow& row, const GroupGraph& graph) {
  json entries = json::array();
  for (const ReportEntry& e : row.entries) entries.push_back(entry_json(e, graph));
  return json{{"path", row.path}, {"entries", std::move(entries)}};
}

json effective_json(const FsTree& tree, std::string_view path, const Sid& principal,
                    const EffectiveResult& result, const GroupGraph& graph) {
  json provenance = json::array();
  for (PermissionAttribute attr : kAllAttributes) {
    const auto& decided = result.provenance(attr);
    json item{{"attribute", std::string(attribute_name(attr))},
              {"code", std::string(attribute_code(attr))},
              {"granted", decided && decided->ace.is_allow()}};
    if (decided) {
      json ace = entry_json(make_entry(decided->ace), graph);
      ace["acl_index"] = decided->acl_index;
      item["decided_by"] = std::move(ace);
    } else {
      item["decided_by"] = nullptr;
    }
    provenance.push_back(std::move(item));
  }
  const NodeId id = tree.find(path);
  json out{{"path", tree.path(id)},
           {"principal", principal.text()},
           {"display_name", graph.label(principal)},
           {"granted", result.granted.to_hex()},
           {"rendered", rendered_or_none(result.granted)},
           {"attributes", attribute_names(attributes_of(result.granted))},
           {"short_circuited", result.short_circuited},
           {"provenance", std::move(provenance)}};
  out["level"] = result.granted.empty()
                     ? json(nullptr)
                     : json(std::string(to_string(render_mask(result.granted, {}).level)));
  return out;
}

json effective_row_json(const EffectiveRow& row) {
  json out{{"path", row.path}, {"granted", row.granted.to_hex()}, {"rendered", row.rendered}};
  out["level"] = row.granted.empty() ? json(nullptr) : json(std::string(to_string(row.level)));
  return out;
}

json principal_json(const Principal& principal) {
  return json{{"sid", principal.sid.text()},
              {"display_name", principal.sid.label()},
              {"kind", std::string(to_string(principal.kind))}};
}

json finding_json(const Finding& finding, const GroupGraph& graph) {
  return json{{"path", finding.path},
              {"principal", finding.principal.text()},
              {"display_name", graph.label(finding.principal)},
              {"shadowed", attribute_names(finding.shadowed_attributes)},
              {"shadowed_rendered", compress_special(mask_of(finding.shadowed_attributes))},
              {"deny_source_path", finding.deny_source_path},
              {"deny", entry_json(make_entry(finding.deny_ace), graph)},
              {"allow", entry_json(make_entry(finding.allow_ace), graph)}};
}

json tree_json(const FsTree& tree, NodeId id, int depth) {
  const FsNode& node = tree.node(id);
  json out{{"path", tree.path(id)},
           {"name", node.name},
           {"kind", std::string(to_string(node.kind))},
           {"owner", node.owner.text()},
           {"child_count", tree.children(id).size()}};
  if (depth > 0) {
    json children = json::array();
    for (NodeId child : tree.children(id)) children.push_back(tree_json(tree, child, depth - 1));
    out["children"] = std::move(children);
  }
  return out;
}

json meta_json(const LoadedSnapshot& snapshot) {
  json attributes = json::array();
  for (PermissionAttribute a : kAllAttributes) {
    attributes.push_back(json{{"name", std::string(attribute_name(a))},
                              {"code", std::string(attribute_code(a))},
                              {"bit", attribute_bit(a)}});
  }
  json levels = json::array();
  for (CoarseLevel level : kStandardLevels) {
    const AccessMask mask = canonical_mask(level);
    levels.push_back(json{{"name", std::string(to_string(level))},
                          {"mask", mask.to_hex()},
                          {"codes", compress_special(mask)}});
  }
  const std::pair<const char*, std::uint32_t> generic[] = {
      {"GenericAll", masks::kGenericAll},
      {"GenericExecute", masks::kGenericExecute},
      {"GenericWrite", masks::kGenericWrite},
      {"GenericRead", masks::kGenericRead},
  };
  json generic_json = json::array();
  for (const auto& [name, bit] : generic) {
    generic_json.push_back(json{{"name", name},
                                {"mask", AccessMask(bit).to_hex()},
                                {"expansion", normalize_generic(AccessMask(bit)).to_hex()}});
  }
  json principals = json::array();
  for (const Principal& p : snapshot.graph.principals()) principals.push_back(principal_json(p));

  const FsTree& tree = snapshot.tree;
  std::size_t folders = 0;
  std::size_t explicit_aces = 0;
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.node(id).kind == NodeKind::Folder) ++folders;
    explicit_aces += tree.node(id).explicit_aces.size();
  }
  json stats{{"folders", folders},
             {"files", tree.size() - folders},
             {"principals", snapshot.graph.principals().size()},
             {"memberships", snapshot.graph.edge_count()},
             {"explicit_aces", explicit_aces}};
  return json{{"format_version", kSnapshotFormatVersion},
              {"attributes", std::move(attributes)},
              {"levels", std::move(levels)},
              {"generic", std::move(generic_json)},
              {"principals", std::move(principals)},
              {"stats", std::move(stats)}};
}

std::string line(const json& value) { return value.dump(); }

std::string table(const std::vector<std::string>& headers,
                  const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) widths[c] = display_width(headers[c]);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], display_width(row[c]));
    }
  }
  auto emit = [&](const std::vector<std::string>& cells, std::string& out) {
    std::string text;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      text += cells[c];
      if (c + 1 < cells.size()) text.append(widths[c] - display_width(cells[c]) + 2, ' ');
    }
    out += text;
    out += '\n';
  };
  std::string out;
  emit(headers, out);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.emplace_back(w, '-');
  emit(rule, out);
  for (const auto& row : rows) emit(row, out);
  return out;
}

std::string acl_table(const std::vector<ReportEntry>& entries, const GroupGraph& graph) {
  std::vector<std::vector<std::string>> rows;
  for (const ReportEntry& e : entries) {
    rows.push_back({graph.label(e.principal), std::string(to_string(e.kind)), e.rendered,
                    provenance_text(e.provenance), flags_text(e.flags)});
  }
  return table({"Principal", "Type", "Permission", "Provenance", "Flags"}, rows);
}

std::string traversal_table(const TraversalReport& report, const GroupGraph& graph) {
  std::vector<std::vector<std::string>> rows;
  for (const ReportRow& row : report.rows) {
    if (row.entries.empty()) rows.push_back({row.path, "", "", "", "", ""});
    for (std::size_t i = 0; i < row.entries.size(); ++i) {
      const ReportEntry& e = row.entries[i];
      std::string who = graph.label(e.principal);
      if (!e.match_chain.empty()) {
        who += " via ";
        for (std::size_t k = 0; k < e.match_chain.size(); ++k) {
          if (k) who += " > ";
          who += graph.label(e.match_chain[k]);
        }
      }
      rows.push_back({i == 0 ? row.path : "", who, std::string(to_string(e.kind)), e.rendered,
                      provenance_text(e.provenance), flags_text(e.flags)});
    }
  }
  return table({"Path", "Principal", "Type", "Permission", "Provenance", "Flags"}, rows);
}

std::string effective_table(const FsTree& tree, std::string_view path, const Sid& principal,
                            const EffectiveResult& result, const GroupGraph& graph) {
  std::string out = "Effective permission of " + graph.label(principal) + " on " +
                    tree.path(tree.find(path)) + ": " + rendered_or_none(result.granted);
  if (result.short_circuited) out += " (explicit deny covers every mentioned attribute)";
  out += "\n\n";
  std::vector<std::vector<std::string>> rows;
  for (PermissionAttribute attr : kAllAttributes) {
    const auto& decided = result.provenance(attr);
    std::vector<std::string> row{std::string(attribute_name(attr)),
                                 std::string(attribute_code(attr))};
    if (!decided) {
      row.insert(row.end(), {"no", "no entry", "", ""});
    } else {
      const Ace& ace = decided->ace;
      row.insert(row.end(), {ace.is_allow() ? "yes" : "no", std::string(to_string(ace.kind())),
                             graph.label(ace.principal()), provenance_text(ace.provenance())});
    }
    rows.push_back(std::move(row));
  }
  return out + table({"Attribute", "Code", "Granted", "Decided by", "Principal", "Provenance"}, rows);
}

std::string effective_rows_table(const EffectiveReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const EffectiveRow& row : report.rows) {
    rows.push_back({row.path, row.rendered, row.granted.to_hex()});
  }
  return table({"Path", "Effective", "Mask"}, rows);
}

std::string findings_table(const std::vector<Finding>& findings, const GroupGraph& graph) {
  std::vector<std::vector<std::string>> rows;
  for (const Finding& f : findings) {
    rows.push_back({f.path, graph.label(f.principal),
                    compress_special(mask_of(f.shadowed_attributes)), graph.label(f.deny_ace.principal()),
                    f.deny_source_path});
  }
  return table({"Path", "Allowed principal", "Shadowed", "Denied principal", "Deny source"}, rows);
}

std::string principals_table(const std::vector<Principal>& principals) {
  std::vector<std::vector<std::string>> rows;
  for (const Principal& p : principals) {
    rows.push_back({p.sid.label(), p.sid.text(), std::string(to_string(p.kind))});
  }
  return table({"Name", "SID", "Kind"}, rows);
}

}  // namespace aclens::format
