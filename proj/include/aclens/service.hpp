#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "aclens/snapshot_io.hpp"

namespace aclens::service {

using Query = std::map<std::string, std::string>;

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// Read-only request handling over one loaded snapshot. Every endpoint is a
/// GET returning JSON; error bodies are {code, message, detail_path}.
///
///   /meta                                   attribute key, levels, principals, stats
///   /tree?path=&depth=                      children listing for lazy expansion
///   /acl?path=                              rendered ACL entries
///   /traverse?root=&filter=&include_unchanged=&include_files=
///   /effective?path=&principal=&recursive=
///   /membership?sid=&direction=member-of|members
///   /audit?root=
class ApiRouter {
 public:
  explicit ApiRouter(std::shared_ptr<const LoadedSnapshot> snapshot);

  ApiResponse handle(std::string_view endpoint, const Query& query) const;

 private:
  std::shared_ptr<const LoadedSnapshot> snapshot_;
};

struct ServeOptions {
  std::string bind = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8077;
  /// Value of Access-Control-Allow-Origin; empty disables the header.
  std::string cors_origin = "*";
};

/// HTTP front end for ApiRouter.
class HttpService {
 public:
  HttpService(std::shared_ptr<const LoadedSnapshot> snapshot, ServeOptions options);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds the listening socket and returns the port, or -1 on failure.
  int bind();
  /// Serves until stop() is called. bind() must have succeeded.
  bool listen();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace aclens::service
