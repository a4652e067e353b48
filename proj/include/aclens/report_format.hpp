#pragma once

// JSON and table renderings shared by the command line and the HTTP service.
// The JSON objects here are the wire schema: CLI json output prints one of
// them per line, the service returns them (or arrays of them) as bodies.

#include <string>
#include <vector>

#include <json.hpp>

#include "aclens/accumulation.hpp"
#include "aclens/snapshot_io.hpp"
#include "aclens/traversal.hpp"

namespace aclens::format {

using nlohmann::json;

json entry_json(const ReportEntry& entry, const GroupGraph& graph);
json row_json(const ReportRow& row, const GroupGraph& graph);
json effective_json(const FsTree& tree, std::string_view path, const Sid& principal,
                    const EffectiveResult& result, const GroupGraph& graph);
json effective_row_json(const EffectiveRow& row);
json principal_json(const Principal& principal);
json finding_json(const Finding& finding, const GroupGraph& graph);
json tree_json(const FsTree& tree, NodeId id, int depth);

/// Attribute/bit/code key, level and generic tables, principal directory and
/// snapshot statistics.
json meta_json(const LoadedSnapshot& snapshot);

/// Compact single-line dump (no trailing newline).
std::string line(const json& value);

/// Left-aligned columns sized to their widest cell, two spaces apart.
std::string table(const std::vector<std::string>& headers,
                  const std::vector<std::vector<std::string>>& rows);

std::string acl_table(const std::vector<ReportEntry>& entries, const GroupGraph& graph);
std::string traversal_table(const TraversalReport& report, const GroupGraph& graph);
std::string effective_table(const FsTree& tree, std::string_view path, const Sid& principal,
                            const EffectiveResult& result, const GroupGraph& graph);
std::string effective_rows_table(const EffectiveReport& report);
std::string findings_table(const std::vector<Finding>& findings, const GroupGraph& graph);
std::string principals_table(const std::vector<Principal>& principals);

std::string provenance_text(Provenance provenance);

}  // namespace aclens::format
