#include "cli.hpp"

#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "aclens/errors.hpp"
#include "aclens/report_format.hpp"
#include "aclens/service.hpp"

namespace aclens::cli {

namespace {

struct Options {
  std::string snapshot;
  std::string path = "/";
  std::vector<std::string> filter;
  bool include_unchanged = false;
  bool include_files = false;
  std::string principal;
  bool recursive = false;
  std::string sid;
  std::string direction = "member-of";
  std::string format = "table";
  int port = 8077;
  std::string bind = "127.0.0.1";
  std::string cors_origin = "*";
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::PathNotFound:
    case ErrorCode::NotAFolder: return kPathError;
    case ErrorCode::UnknownPrincipal:
    case ErrorCode::NotAGroup:
    case ErrorCode::InvalidSid: return kPrincipalError;
    default: return kSnapshotError;
  }
}

// Principal-side SID arguments: a malformed one is a principal error.
Sid principal_arg(const std::string& text) {
  if (!Sid::is_valid(text)) {
    throw Error(ErrorCode::InvalidSid, "malformed SID '" + text + "'", text);
  }
  return Sid(text);
}

class Commands {
 public:
  Commands(const Options& opts, std::ostream& out, std::ostream& err)
      : opts_(opts), out_(out), err_(err) {}

  int show() {
    const LoadedSnapshot& snap = load();
    std::vector<ReportEntry> entries;
    for (const Ace& ace : snap.tree.acl(opts_.path).entries) entries.push_back(make_entry(ace));
    if (json()) {
      for (const auto& e : entries) out_ << format::line(format::entry_json(e, snap.graph)) << '\n';
    } else {
      out_ << format::acl_table(entries, snap.graph);
    }
    return kOk;
  }

  int traverse() {
    const LoadedSnapshot& snap = load();
    TraversalOptions options;
    for (const auto& sid : opts_.filter) options.filter.insert(principal_arg(sid));
    options.include_unchanged = opts_.include_unchanged;
    options.include_files = opts_.include_files;
    const TraversalReport report = traverse_report(snap.tree, opts_.path, options);
    if (json()) {
      for (const auto& row : report.rows) out_ << format::line(format::row_json(row, snap.graph)) << '\n';
    } else {
      out_ << format::traversal_table(report, snap.graph);
    }
    return kOk;
  }

  int effective() {
    const LoadedSnapshot& snap = load();
    const Sid principal = principal_arg(opts_.principal);
    snap.graph.principal(principal);
    if (opts_.recursive) {
      const EffectiveReport report =
          effective_search(snap.tree, opts_.path, principal, snap.graph, true);
      if (json()) {
        for (const auto& row : report.rows) out_ << format::line(format::effective_row_json(row)) << '\n';
      } else {
        out_ << format::effective_rows_table(report);
      }
      return kOk;
    }
    const EffectiveResult result = effective_mask(snap.tree, opts_.path, principal, snap.graph);
    if (json()) {
      out_ << format::line(format::effective_json(snap.tree, opts_.path, principal, result, snap.graph))
           << '\n';
    } else {
      out_ << format::effective_table(snap.tree, opts_.path, principal, result, snap.graph);
    }
    return kOk;
  }

  int membership() {
    const LoadedSnapshot& snap = load();
    const Sid sid = principal_arg(opts_.sid);
    const std::set<Sid> found = opts_.direction == "members" ? members_closure(snap.graph, sid)
                                                             : member_of_closure(snap.graph, sid);
    std::vector<Principal> principals;
    for (const Sid& s : found) principals.push_back(snap.graph.principal(s));
    if (json()) {
      for (const auto& p : principals) out_ << format::line(format::principal_json(p)) << '\n';
    } else if (!principals.empty()) {
      out_ << format::principals_table(principals);
    }
    return kOk;
  }

  int audit() {
    const LoadedSnapshot& snap = load();
    const auto findings = audit_shadowed_denies(snap.tree, opts_.path, snap.graph);
    if (json()) {
      for (const auto& f : findings) out_ << format::line(format::finding_json(f, snap.graph)) << '\n';
    } else if (findings.empty()) {
      out_ << "no shadowed denies found\n";
    } else {
      out_ << format::findings_table(findings, snap.graph);
    }
    return findings.empty() ? kOk : kFindings;
  }

  int meta() {
    const LoadedSnapshot& snap = load();
    out_ << format::line(format::meta_json(snap)) << '\n';
    return kOk;
  }

  int serve() {
    auto snap = std::make_shared<const LoadedSnapshot>(load_owned());
    service::HttpService http(snap, {opts_.bind, opts_.port, opts_.cors_origin});
    const int port = http.bind();
    if (port < 0) {
      err_ << "aclens: cannot bind " << opts_.bind << ":" << opts_.port << '\n';
      return kSnapshotError;
    }
    err_ << "aclens: serving on http://" << opts_.bind << ":" << port << '\n';
    http.listen();
    return kOk;
  }

 private:
  bool json() const { return opts_.format == "json"; }

  LoadedSnapshot load_owned() {
    try {
      LoadedSnapshot snap = load_snapshot_file(opts_.snapshot);
      for (const auto& w : snap.warnings) err_ << "aclens: warning: " << w << '\n';
      return snap;
    } catch (const Error& e) {
      // Every failure while loading is a snapshot error, whatever its code.
      throw Error(ErrorCode::SchemaError, e.what(), e.detail_path());
    }
  }

  const LoadedSnapshot& load() {
    loaded_.emplace(load_owned());
    return *loaded_;
  }

  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<LoadedSnapshot> loaded_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Analyse NTFS-style permissions over directory-tree snapshots", "aclens"};
  app.require_subcommand(1);

  auto add_snapshot = [&](CLI::App* cmd) {
    cmd->add_option("--snapshot", opts.snapshot, "Snapshot JSON file")->required();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opts.format, "Output format: table or json")
        ->transform(CLI::IsMember({"table", "json"}, CLI::ignore_case));
  };

  auto* show = app.add_subcommand("show", "Print the ACL of one path");
  add_snapshot(show);
  show->add_option("path", opts.path, "Path inside the snapshot")->required();
  add_format(show);

  auto* traverse = app.add_subcommand("traverse", "ACL report over a directory tree");
  add_snapshot(traverse);
  traverse->add_option("root", opts.path, "Start folder");
  traverse->add_option("--filter", opts.filter, "SID whose entries are hidden (repeatable)");
  traverse->add_flag("--include-unchanged", opts.include_unchanged,
                     "Also list folders whose ACL equals their parent's");
  traverse->add_flag("--include-files", opts.include_files, "List files as well as folders");
  add_format(traverse);

  auto* effective = app.add_subcommand("effective", "Effective permission of a principal");
  add_snapshot(effective);
  effective->add_option("root", opts.path, "Path, or start folder with --recursive");
  effective->add_option("--principal", opts.principal, "Principal SID")->required();
  effective->add_flag("--recursive", opts.recursive, "Report every folder that differs from its parent");
  add_format(effective);

  auto* membership = app.add_subcommand("membership", "Transitive group membership");
  add_snapshot(membership);
  membership->add_option("--sid", opts.sid, "Principal SID")->required();
  membership->add_option("--direction", opts.direction, "member-of or members")
      ->check(CLI::IsMember({"member-of", "members"}));
  add_format(membership);

  auto* audit = app.add_subcommand("audit", "Find explicit allows that shadow inherited denies");
  add_snapshot(audit);
  audit->add_option("root", opts.path, "Start folder");
  add_format(audit);

  auto* meta = app.add_subcommand("meta", "Dump the attribute/code/bit table and snapshot stats");
  add_snapshot(meta);

  auto* serve = app.add_subcommand("serve", "Serve the snapshot over HTTP");
  add_snapshot(serve);
  serve->add_option("--port", opts.port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--bind", opts.bind, "Bind address");
  serve->add_option("--cors-origin", opts.cors_origin,
                    "Access-Control-Allow-Origin value; empty disables the header");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share exit code 2 so every failure stays within 0-4.
    return app.exit(e, out, err) == 0 ? kOk : kSnapshotError;
  }

  Commands commands(opts, out, err);
  try {
    if (*show) return commands.show();
    if (*traverse) return commands.traverse();
    if (*effective) return commands.effective();
    if (*membership) return commands.membership();
    if (*audit) return commands.audit();
    if (*meta) return commands.meta();
    if (*serve) return commands.serve();
  } catch (const Error& e) {
    err << "aclens: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kOk;
}

}  // namespace aclens::cli
