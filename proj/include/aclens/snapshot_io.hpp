#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aclens/fs_tree.hpp"
#include "aclens/membership.hpp"

namespace aclens {

inline constexpr int kSnapshotFormatVersion = 1;

/// Declarative snapshot: principal directory, membership edges and the
/// explicit entries of a directory tree. Masks are normalized.
struct Snapshot {
  int format_version = kSnapshotFormatVersion;
  std::vector<Principal> principals;
  std::vector<Membership> memberships;
  FsNode tree;
};

/// Parses and validates a JSON snapshot document.
///
/// ACE masks may be spelled as hex ("0x001301bf"), attribute codes
/// ("R-W-Dc-Rp-Cp") or a level name ("Modify"). Generic bits are expanded.
/// Errors are SchemaError, UnknownSid, BadMask or BadFlags; detail_path is a
/// JSON pointer to the offending element.
Snapshot parse_snapshot(std::string_view text);

/// Canonical JSON: masks as hex with a "rendered" companion field, keys
/// sorted, two-space indentation, trailing newline.
std::string serialize_snapshot(const Snapshot& snapshot);

struct LoadedSnapshot {
  FsTree tree;
  GroupGraph graph;
  std::vector<std::string> warnings;
};

/// Builds the tree, materializes inheritance and builds the membership graph.
/// Membership cycles are reported as warnings.
LoadedSnapshot load_tree(const Snapshot& snapshot);

/// Reads, parses and loads a snapshot file. Unreadable files raise SchemaError.
LoadedSnapshot load_snapshot_file(const std::string& file);

struct SyntheticParams {
  std::uint64_t seed = 1;
  std::size_t folders = 1;
  std::size_t principals = 1;
  std::size_t max_depth = 1;
  double ace_density = 0.0;
  /// Files scattered over random folders.
  std::size_t files = 0;
};

/// Deterministic random snapshot. Throws BadParameters for folders or
/// principals of zero, a density outside [0, 1], or a depth of zero with
/// more than one folder.
Snapshot generate_synthetic(const SyntheticParams& params);

}  // namespace aclens
