#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aclens/model.hpp"

namespace aclens {

enum class NodeKind { Folder, File };

std::string_view to_string(NodeKind kind) noexcept;

struct FsNode {
  std::string name;
  NodeKind kind = NodeKind::Folder;
  Sid owner{"S-1-5-32-544"};
  std::vector<Ace> explicit_aces;
  std::vector<FsNode> children;
};

/// Index of a node in depth-first pre-order; 0 is the root.
using NodeId = std::uint32_t;

/// Immutable directory hierarchy. Construction validates the node invariants,
/// sorts siblings by name and assigns ids in depth-first pre-order, so the
/// subtree of a node occupies the contiguous id range [id, subtree_end(id)).
///
/// The materialized ACLs are attached by materialize_inheritance(); copies
/// share the node storage.
class FsTree {
 public:
  explicit FsTree(FsNode root);

  const FsNode& root() const noexcept { return *root_; }
  std::size_t size() const noexcept { return index_->entries.size(); }

  const FsNode& node(NodeId id) const { return *entry(id).node; }
  const std::string& path(NodeId id) const { return entry(id).path; }
  std::optional<NodeId> parent(NodeId id) const;
  std::span<const NodeId> children(NodeId id) const { return entry(id).children; }
  std::uint32_t depth(NodeId id) const { return entry(id).depth; }
  NodeId subtree_end(NodeId id) const { return entry(id).subtree_end; }

  /// Throws PathNotFound or NotAFolder.
  NodeId find(std::string_view path) const;

  bool is_materialized() const noexcept { return acls_ != nullptr; }
  /// Throws NotMaterialized before materialize_inheritance() ran.
  const Acl& acl(NodeId id) const;
  const Acl& acl(std::string_view path) const { return acl(find(path)); }

 private:
  friend FsTree materialize_inheritance(FsTree tree);

  struct Entry {
    const FsNode* node;
    std::string path;
    NodeId parent;
    std::uint32_t depth;
    NodeId subtree_end;
    std::vector<NodeId> children;
  };
  struct Index {
    std::vector<Entry> entries;
  };

  const Entry& entry(NodeId id) const;

  std::shared_ptr<const FsNode> root_;
  std::shared_ptr<const Index> index_;
  std::shared_ptr<const std::vector<Acl>> acls_;
};

/// "" and "/" denote the root; segments are separated by "/".
const FsNode& resolve_path(const FsTree& tree, std::string_view path);

/// Joins a parent path and a child name ("/" + "a" -> "/a").
std::string join_path(std::string_view parent, std::string_view name);

}  // namespace aclens
