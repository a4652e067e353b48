#include "aclens/snapshot_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "aclens/errors.hpp"
#include "aclens/mask_semantics.hpp"
#include "aclens/propagation.hpp"

namespace aclens {

using nlohmann::json;

namespace {

constexpr std::string_view kDefaultOwner = "S-1-5-32-544";

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what, where);
}

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<std::string_view> required,
                 std::initializer_list<std::string_view> optional) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (std::string_view key : required) {
    if (!obj.contains(key)) schema_error(where, "missing field '" + std::string(key) + "'");
  }
  for (const auto& [key, _] : obj.items()) {
    auto listed = [&](std::initializer_list<std::string_view> keys) {
      for (std::string_view k : keys) {
        if (k == key) return true;
      }
      return false;
    };
    if (!listed(required) && !listed(optional)) {
      schema_error(where + "/" + key, "unexpected field '" + key + "'");
    }
  }
}

const std::string& string_at(const json& obj, std::string_view key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) schema_error(where + "/" + std::string(key), "expected a string");
  return v.get_ref<const std::string&>();
}

const json& array_at(const json& obj, std::string_view key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array()) schema_error(where + "/" + std::string(key), "expected an array");
  return v;
}

Sid parse_sid(const std::string& text, const std::string& where) {
  if (!Sid::is_valid(text)) schema_error(where, "malformed SID '" + text + "'");
  return Sid(text);
}

AccessMask parse_mask(const std::string& text, const std::string& where) {
  try {
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      if (text.size() > 10) throw Error(ErrorCode::BadMask, "hex mask wider than 32 bits");
      std::uint32_t bits = 0;
      for (std::size_t i = 2; i < text.size(); ++i) {
        const char c = text[i];
        std::uint32_t digit;
        if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
        else throw Error(ErrorCode::BadMask, "invalid hex digit");
        bits = (bits << 4) | digit;
      }
      return normalize_generic(AccessMask(bits));
    }
    if (auto level = coarse_level_from_name(text)) return canonical_mask(*level);
    if (text.empty()) throw Error(ErrorCode::BadMask, "empty mask");
    return parse_compressed(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadMask, where + ": bad mask '" + text + "': " + e.what(), where);
  }
}

InheritFlags parse_flags(const json& flags, const std::string& where) {
  if (!flags.is_array()) throw Error(ErrorCode::BadFlags, where + ": expected an array", where);
  InheritFlags out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    if (!flags[i].is_string()) throw Error(ErrorCode::BadFlags, at + ": expected a string", at);
    const auto& name = flags[i].get_ref<const std::string&>();
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::BadFlags, at + ": duplicate flag '" + name + "'", at);
    }
    if (name == "container_inherit") out.container_inherit = true;
    else if (name == "object_inherit") out.object_inherit = true;
    else if (name == "no_propagate") out.no_propagate = true;
    else if (name == "inherit_only") out.inherit_only = true;
    else throw Error(ErrorCode::BadFlags, at + ": unknown flag '" + name + "'", at);
  }
  try {
    out.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::BadFlags, where + ": " + e.what(), where);
  }
  return out;
}

class DocumentParser {
 public:
  Snapshot parse(const json& doc) {
    expect_keys(doc, "", {"format_version", "principals", "memberships", "tree"}, {});
    Snapshot snap;
    const json& version = doc.at("format_version");
    if (!version.is_number_integer() || version.get<long long>() != kSnapshotFormatVersion) {
      schema_error("/format_version", "unsupported format version");
    }
    snap.format_version = kSnapshotFormatVersion;
    parse_principals(array_at(doc, "principals", ""), snap);
    parse_memberships(array_at(doc, "memberships", ""), snap);
    snap.tree = parse_node(doc.at("tree"), "/tree", Sid(std::string(kDefaultOwner)), true);
    return snap;
  }

 private:
  void parse_principals(const json& list, Snapshot& snap) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/principals/" + std::to_string(i);
      const json& p = list[i];
      expect_keys(p, where, {"sid", "kind"}, {"display_name"});
      const std::string& text = string_at(p, "sid", where);
      if (!Sid::is_valid(text)) schema_error(where + "/sid", "malformed SID '" + text + "'");
      std::optional<std::string> display;
      if (p.contains("display_name")) display = string_at(p, "display_name", where);
      const std::string& kind = string_at(p, "kind", where);
      PrincipalKind pk;
      if (kind == "user") pk = PrincipalKind::User;
      else if (kind == "group") pk = PrincipalKind::Group;
      else schema_error(where + "/kind", "kind must be 'user' or 'group'");
      if (!declared_.emplace(text, pk).second) {
        schema_error(where + "/sid", "principal declared twice: " + text);
      }
      snap.principals.push_back(Principal{Sid(text, std::move(display)), pk});
    }
  }

  void parse_memberships(const json& list, Snapshot& snap) {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/memberships/" + std::to_string(i);
      const json& m = list[i];
      expect_keys(m, where, {"member_sid", "group_sid"}, {});
      const std::string& member = string_at(m, "member_sid", where);
      const std::string& group = string_at(m, "group_sid", where);
      require_declared(member, where + "/member_sid");
      require_declared(group, where + "/group_sid");
      if (declared_.at(group) != PrincipalKind::Group) {
        schema_error(where + "/group_sid", group + " is not a group");
      }
      if (member == group) schema_error(where, "self-membership for " + member);
      if (!seen.emplace(member, group).second) schema_error(where, "duplicate membership");
      snap.memberships.push_back(Membership{Sid(member), Sid(group)});
    }
  }

  void require_declared(const std::string& sid, const std::string& where) {
    if (!declared_.contains(sid)) {
      throw Error(ErrorCode::UnknownSid, where + ": undeclared SID '" + sid + "'", where);
    }
  }

  Ace parse_ace(const json& a, const std::string& where) {
    expect_keys(a, where, {"principal_sid", "kind", "mask"}, {"flags", "rendered"});
    const std::string& sid = string_at(a, "principal_sid", where);
    require_declared(sid, where + "/principal_sid");
    const std::string& kind = string_at(a, "kind", where);
    AceKind ak;
    if (kind == "allow") ak = AceKind::Allow;
    else if (kind == "deny") ak = AceKind::Deny;
    else schema_error(where + "/kind", "kind must be 'allow' or 'deny'");
    const AccessMask mask = parse_mask(string_at(a, "mask", where), where + "/mask");
    if (mask.empty()) throw Error(ErrorCode::BadMask, where + "/mask: mask is zero", where + "/mask");
    InheritFlags flags;
    if (a.contains("flags")) flags = parse_flags(a.at("flags"), where + "/flags");
    return Ace(Sid(sid), ak, mask, flags);
  }

  FsNode parse_node(const json& n, const std::string& where, const Sid& inherited_owner,
                    bool is_root) {
    expect_keys(n, where, {"name", "kind"}, {"owner_sid", "aces", "children"});
    FsNode node;
    node.name = string_at(n, "name", where);
    if (!is_root && (node.name.empty() || node.name.find('/') != std::string::npos)) {
      schema_error(where + "/name", "invalid node name '" + node.name + "'");
    }
    const std::string& kind = string_at(n, "kind", where);
    if (kind == "folder") node.kind = NodeKind::Folder;
    else if (kind == "file") node.kind = NodeKind::File;
    else schema_error(where + "/kind", "kind must be 'folder' or 'file'");
    if (is_root && node.kind != NodeKind::Folder) schema_error(where + "/kind", "root must be a folder");

    node.owner = n.contains("owner_sid")
                     ? parse_sid(string_at(n, "owner_sid", where), where + "/owner_sid")
                     : inherited_owner;

    if (n.contains("aces")) {
      const json& aces = array_at(n, "aces", where);
      for (std::size_t i = 0; i < aces.size(); ++i) {
        node.explicit_aces.push_back(parse_ace(aces[i], where + "/aces/" + std::to_string(i)));
      }
    }
    if (n.contains("children")) {
      const json& children = array_at(n, "children", where);
      if (node.kind == NodeKind::File && !children.empty()) {
        schema_error(where + "/children", "a file cannot have children");
      }
      std::unordered_set<std::string> names;
      for (std::size_t i = 0; i < children.size(); ++i) {
        const std::string at = where + "/children/" + std::to_string(i);
        FsNode child = parse_node(children[i], at, node.owner, false);
        if (!names.insert(child.name).second) {
          schema_error(at + "/name", "duplicate child name '" + child.name + "'");
        }
        node.children.push_back(std::move(child));
      }
    }
    return node;
  }

  std::unordered_map<std::string, PrincipalKind> declared_;
};

json ace_json(const Ace& ace) {
  json flags = json::array();
  for (const auto& f : flag_names(ace.flags())) flags.push_back(f);
  return json{{"principal_sid", ace.principal().text()},
              {"kind", std::string(to_string(ace.kind()))},
              {"mask", ace.mask().to_hex()},
              {"rendered", render_mask(ace.mask(), ace.flags()).text},
              {"flags", std::move(flags)}};
}

json node_json(const FsNode& node, const Sid* parent_owner) {
  json out{{"name", node.name}, {"kind", std::string(to_string(node.kind))}};
  if (!parent_owner || !(node.owner == *parent_owner)) out["owner_sid"] = node.owner.text();
  json aces = json::array();
  for (const Ace& ace : node.explicit_aces) aces.push_back(ace_json(ace));
  out["aces"] = std::move(aces);
  if (node.kind == NodeKind::Folder) {
    json children = json::array();
    for (const FsNode& child : node.children) children.push_back(node_json(child, &node.owner));
    out["children"] = std::move(children);
  }
  return out;
}

}  // namespace

Snapshot parse_snapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what(), "");
  }
  try {
    return DocumentParser{}.parse(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid document: ") + e.what(), "");
  }
}

std::string serialize_snapshot(const Snapshot& snapshot) {
  json principals = json::array();
  for (const Principal& p : snapshot.principals) {
    json entry{{"sid", p.sid.text()}, {"kind", std::string(to_string(p.kind))}};
    if (p.sid.display_name()) entry["display_name"] = *p.sid.display_name();
    principals.push_back(std::move(entry));
  }
  json memberships = json::array();
  for (const Membership& m : snapshot.memberships) {
    memberships.push_back(json{{"member_sid", m.member.text()}, {"group_sid", m.group.text()}});
  }
  const json doc{{"format_version", snapshot.format_version},
                 {"principals", std::move(principals)},
                 {"memberships", std::move(memberships)},
                 {"tree", node_json(snapshot.tree, nullptr)}};
  return doc.dump(2) + "\n";
}

LoadedSnapshot load_tree(const Snapshot& snapshot) {
  GroupGraph graph(snapshot.principals, snapshot.memberships);
  std::vector<std::string> warnings;
  for (const Sid& g : graph.cyclic_groups()) {
    warnings.push_back("membership cycle through " + graph.label(g) + " (" + g.text() + ")");
  }
  FsTree tree = materialize_inheritance(FsTree(snapshot.tree));
  return LoadedSnapshot{std::move(tree), std::move(graph), std::move(warnings)};
}

LoadedSnapshot load_snapshot_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot read snapshot '" + file + "'", "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_tree(parse_snapshot(buf.str()));
}

}  // namespace aclens
