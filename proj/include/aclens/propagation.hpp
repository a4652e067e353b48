#pragma once

#include <cstdint>
#include <string_view>

#include "aclens/fs_tree.hpp"

namespace aclens {

/// Builds every node's canonical ACL from the explicit entries in the tree.
///
/// - An entry applies to the node it sits on unless it is inherit_only.
/// - container_inherit carries it to child folders, object_inherit to child
///   files. An object_inherit-only entry passes through child folders
///   without applying to them so it still reaches the files below.
/// - Copies record the number of levels to their explicit source.
/// - no_propagate delivers the entry to depth-1 children only, with all
///   inheritance flags cleared on the copy.
/// - Otherwise an applied copy keeps container_inherit/object_inherit and
///   drops inherit_only.
FsTree materialize_inheritance(FsTree tree);

/// 0 for an explicit entry, its recorded distance for an inherited one.
/// Throws AceNotPresent when the entry is not in the ACL at path.
std::uint32_t distance_of(const FsTree& tree, std::string_view path, const Ace& ace);

}  // namespace aclens
