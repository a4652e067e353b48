#include "aclens/service.hpp"

#include <charconv>
#include <functional>
#include <set>

#include <httplib.h>

#include "aclens/errors.hpp"
#include "aclens/report_format.hpp"

namespace aclens::service {

namespace {

using format::json;

struct BadQuery {
  std::string message;
  std::string param;
};

ApiResponse error_response(int status, std::string_view code, const std::string& message,
                           const std::string& detail_path) {
  return {status, format::line(json{{"code", code}, {"message", message},
                                    {"detail_path", detail_path}})};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::PathNotFound:
    case ErrorCode::UnknownPrincipal:
    case ErrorCode::UnknownSid: return 404;
    default: return 400;
  }
}

class Params {
 public:
  Params(const Query& query, std::initializer_list<std::string_view> allowed) : query_(query) {
    for (const auto& [key, _] : query) {
      bool known = false;
      for (std::string_view a : allowed) known = known || a == key;
      if (!known) throw BadQuery{"unknown query parameter '" + key + "'", key};
    }
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
    auto it = query_.find(key);
    if (it != query_.end()) return it->second;
    if (fallback) return *fallback;
    throw BadQuery{"missing query parameter '" + key + "'", key};
  }

  bool flag(const std::string& key) const {
    auto it = query_.find(key);
    if (it == query_.end()) return false;
    const std::string& v = it->second;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0" || v.empty()) return false;
    throw BadQuery{"'" + key + "' must be true or false", key};
  }

  int integer(const std::string& key, int fallback, int lo, int hi) const {
    auto it = query_.find(key);
    if (it == query_.end()) return fallback;
    int value = 0;
    const std::string& v = it->second;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc{} || end != v.data() + v.size() || value < lo || value > hi) {
      throw BadQuery{"'" + key + "' must be an integer in [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]",
                     key};
    }
    return value;
  }

  Sid sid(const std::string& key) const {
    const std::string v = text(key);
    if (!Sid::is_valid(v)) throw BadQuery{"malformed SID '" + v + "'", key};
    return Sid(v);
  }

 private:
  const Query& query_;
};

json array_of(auto&& items, auto&& to_json) {
  json out = json::array();
  for (const auto& item : items) out.push_back(to_json(item));
  return out;
}

}  // namespace

ApiRouter::ApiRouter(std::shared_ptr<const LoadedSnapshot> snapshot)
    : snapshot_(std::move(snapshot)) {}

ApiResponse ApiRouter::handle(std::string_view endpoint, const Query& query) const {
  const FsTree& tree = snapshot_->tree;
  const GroupGraph& graph = snapshot_->graph;
  try {
    json body;
    if (endpoint == "/meta") {
      Params p(query, {});
      body = format::meta_json(*snapshot_);
    } else if (endpoint == "/tree") {
      Params p(query, {"path", "depth"});
      const NodeId id = tree.find(p.text("path", "/"));
      body = format::tree_json(tree, id, p.integer("depth", 1, 0, 64));
    } else if (endpoint == "/acl") {
      Params p(query, {"path"});
      std::vector<ReportEntry> entries;
      for (const Ace& ace : tree.acl(p.text("path")).entries) entries.push_back(make_entry(ace));
      body = array_of(entries, [&](const ReportEntry& e) { return format::entry_json(e, graph); });
    } else if (endpoint == "/traverse") {
      Params p(query, {"root", "filter", "include_unchanged", "include_files"});
      TraversalOptions options;
      const std::string filter = p.text("filter", "");
      std::size_t start = 0;
      while (start < filter.size()) {
        const auto comma = filter.find(',', start);
        const std::string sid =
            filter.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!Sid::is_valid(sid)) throw BadQuery{"malformed SID '" + sid + "' in filter", "filter"};
        options.filter.insert(Sid(sid));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      options.include_unchanged = p.flag("include_unchanged");
      options.include_files = p.flag("include_files");
      const TraversalReport report = traverse_report(tree, p.text("root", "/"), options);
      body = array_of(report.rows, [&](const ReportRow& r) { return format::row_json(r, graph); });
    } else if (endpoint == "/effective") {
      Params p(query, {"path", "principal", "recursive"});
      const std::string path = p.text("path");
      const Sid principal = p.sid("principal");
      if (p.flag("recursive")) {
        const EffectiveReport report = effective_search(tree, path, principal, graph, true);
        body = array_of(report.rows, format::effective_row_json);
      } else {
        body = format::effective_json(tree, path, principal,
                                      effective_mask(tree, path, principal, graph), graph);
      }
    } else if (endpoint == "/membership") {
      Params p(query, {"sid", "direction"});
      const Sid sid = p.sid("sid");
      const std::string direction = p.text("direction", "member-of");
      std::set<Sid> found;
      if (direction == "member-of") found = member_of_closure(graph, sid);
      else if (direction == "members") found = members_closure(graph, sid);
      else throw BadQuery{"direction must be member-of or members", "direction"};
      body = array_of(found, [&](const Sid& s) { return format::principal_json(graph.principal(s)); });
    } else if (endpoint == "/audit") {
      Params p(query, {"root"});
      const auto findings = audit_shadowed_denies(tree, p.text("root", "/"), graph);
      body = array_of(findings, [&](const Finding& f) { return format::finding_json(f, graph); });
    } else {
      return error_response(404, "NotFound", "unknown endpoint " + std::string(endpoint),
                            std::string(endpoint));
    }
    return {200, format::line(body)};
  } catch (const BadQuery& e) {
    return error_response(400, "BadQuery", e.message, e.param);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what(), e.detail_path());
  }
}

struct HttpService::Impl {
  Impl(ApiRouter r, ServeOptions o) : router(std::move(r)), options(std::move(o)) {}

  ApiRouter router;
  ServeOptions options;
  httplib::Server server;
};

HttpService::HttpService(std::shared_ptr<const LoadedSnapshot> snapshot, ServeOptions options)
    : impl_(std::make_unique<Impl>(ApiRouter(std::move(snapshot)), std::move(options))) {
  Impl& impl = *impl_;
  impl.server.Get(R"(/.*)", [&impl](const httplib::Request& req, httplib::Response& res) {
    Query query;
    // A repeated parameter (filter=a&filter=b) joins as a comma list.
    for (const auto& [key, value] : req.params) {
      auto [it, fresh] = query.emplace(key, value);
      if (!fresh) it->second += "," + value;
    }
    const ApiResponse out = impl.router.handle(req.path, query);
    res.status = out.status;
    res.set_content(out.body, "application/json");
    if (!impl.options.cors_origin.empty()) {
      res.set_header("Access-Control-Allow-Origin", impl.options.cors_origin);
    }
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  if (impl_->options.port == 0) return impl_->server.bind_to_any_port(impl_->options.bind);
  if (!impl_->server.bind_to_port(impl_->options.bind, impl_->options.port)) return -1;
  return impl_->options.port;
}

bool HttpService::listen() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace aclens::service
