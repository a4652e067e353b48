#include "aclens/fs_tree.hpp"

#include <algorithm>

#include "aclens/errors.hpp"

namespace aclens {

namespace {

constexpr NodeId kNoParent = static_cast<NodeId>(-1);

void prepare(FsNode& node, const std::string& path) {
  if (node.kind == NodeKind::File && !node.children.empty()) {
    throw Error(ErrorCode::InvalidTree, "file node has children", path);
  }
  for (const Ace& ace : node.explicit_aces) {
    if (!ace.is_explicit()) {
      throw Error(ErrorCode::InvalidTree, "node carries an inherited ACE", path);
    }
  }
  std::sort(node.children.begin(), node.children.end(),
            [](const FsNode& a, const FsNode& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const std::string& name = node.children[i].name;
    if (name.empty() || name.find('/') != std::string::npos) {
      throw Error(ErrorCode::InvalidTree, "invalid child name '" + name + "'", path);
    }
    if (i > 0 && node.children[i - 1].name == name) {
      throw Error(ErrorCode::InvalidTree, "duplicate child name '" + name + "'", path);
    }
  }
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  return kind == NodeKind::Folder ? "folder" : "file";
}

std::string join_path(std::string_view parent, std::string_view name) {
  std::string out(parent);
  if (out.empty() || out.back() != '/') out.push_back('/');
  out.append(name);
  return out;
}

FsTree::FsTree(FsNode root) {
  if (root.kind != NodeKind::Folder) {
    throw Error(ErrorCode::InvalidTree, "tree root must be a folder", "/");
  }
  auto owned = std::make_shared<FsNode>(std::move(root));
  auto index = std::make_shared<Index>();

  // Iterative pre-order walk; deep synthetic trees must not overflow the stack.
  struct Frame {
    FsNode* node;
    NodeId id;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  auto visit = [&](FsNode* node, NodeId parent, std::string path, std::uint32_t depth) {
    prepare(*node, path);
    const auto id = static_cast<NodeId>(index->entries.size());
    index->entries.push_back(Entry{node, std::move(path), parent, depth, id + 1, {}});
    if (parent != kNoParent) index->entries[parent].children.push_back(id);
    stack.push_back(Frame{node, id, 0});
  };
  visit(owned.get(), kNoParent, "/", 0);
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_child == top.node->children.size()) {
      index->entries[top.id].subtree_end = static_cast<NodeId>(index->entries.size());
      stack.pop_back();
      continue;
    }
    FsNode* child = &top.node->children[top.next_child++];
    const NodeId parent = top.id;
    visit(child, parent, join_path(index->entries[parent].path, child->name),
          index->entries[parent].depth + 1);
  }

  root_ = std::move(owned);
  index_ = std::move(index);
}

const FsTree::Entry& FsTree::entry(NodeId id) const {
  if (id >= index_->entries.size()) {
    throw Error(ErrorCode::PathNotFound, "node id out of range");
  }
  return index_->entries[id];
}

std::optional<NodeId> FsTree::parent(NodeId id) const {
  const NodeId p = entry(id).parent;
  if (p == kNoParent) return std::nullopt;
  return p;
}

NodeId FsTree::find(std::string_view path) const {
  std::string_view rest = path;
  if (!rest.empty() && rest.front() == '/') rest.remove_prefix(1);
  if (!rest.empty() && rest.back() == '/') rest.remove_suffix(1);

  NodeId current = 0;
  while (!rest.empty()) {
    const auto slash = rest.find('/');
    const std::string_view segment = rest.substr(0, slash);
    rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);

    const Entry& here = index_->entries[current];
    if (here.node->kind == NodeKind::File) {
      throw Error(ErrorCode::NotAFolder, "'" + here.path + "' is not a folder",
                  std::string(path));
    }
    const auto& kids = here.children;
    auto it = std::lower_bound(kids.begin(), kids.end(), segment,
                               [this](NodeId id, std::string_view name) {
                                 return index_->entries[id].node->name < name;
                               });
    if (segment.empty() || it == kids.end() || index_->entries[*it].node->name != segment) {
      throw Error(ErrorCode::PathNotFound, "path not found: " + std::string(path),
                  std::string(path));
    }
    current = *it;
  }
  return current;
}

const Acl& FsTree::acl(NodeId id) const {
  if (!acls_) {
    throw Error(ErrorCode::NotMaterialized, "tree has not been materialized", path(id));
  }
  entry(id);
  return (*acls_)[id];
}

const FsNode& resolve_path(const FsTree& tree, std::string_view path) {
  return tree.node(tree.find(path));
}

}  // namespace aclens
