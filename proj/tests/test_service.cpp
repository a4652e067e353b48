#include <doctest.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "aclens/service.hpp"
#include "test_support.hpp"

using namespace aclens;
using namespace aclens::testing;
using aclens::service::ApiRouter;
using nlohmann::json;

namespace {

std::shared_ptr<const LoadedSnapshot> shared_fixture(std::string_view name) {
  return std::make_shared<const LoadedSnapshot>(load_fixture(name));
}

struct Reply {
  int status;
  json body;
};

Reply get(const ApiRouter& router, std::string_view endpoint, service::Query query = {}) {
  const auto r = router.handle(endpoint, query);
  return {r.status, json::parse(r.body)};
}

}  // namespace

TEST_CASE("router endpoints on the shadowed-deny fixture") {
  const ApiRouter router(shared_fixture("fig3_shadowed_deny"));

  SUBCASE("acl") {
    const Reply r = get(router, "/acl", {{"path", "/Accounting"}});
    CHECK(r.status == 200);
    REQUIRE(r.body.is_array());
    CHECK(r.body.size() == 1);
    CHECK(r.body[0]["kind"] == "deny");
  }
  SUBCASE("tree") {
    const Reply r = get(router, "/tree", {{"path", "/"}, {"depth", "1"}});
    CHECK(r.status == 200);
    REQUIRE(r.body["children"].size() == 1);
    CHECK(r.body["children"][0]["name"] == "Accounting");
    CHECK(r.body["children"][0]["child_count"] == 2);
    CHECK_FALSE(r.body["children"][0].contains("children"));
  }
  SUBCASE("effective") {
    const Reply r = get(router, "/effective",
                        {{"path", "/Accounting/Plan"}, {"principal", kAlice.text()}});
    CHECK(r.status == 200);
    CHECK(r.body["level"] == "Modify");
    CHECK(r.body["provenance"].size() == 14);
    const Reply rec = get(router, "/effective",
                          {{"path", "/"}, {"principal", kAlice.text()}, {"recursive", "true"}});
    CHECK(rec.body.size() == 3);
  }
  SUBCASE("traverse with filter") {
    const Reply r = get(router, "/traverse", {{"filter", "S-1-1-0"}, {"include_unchanged", "true"}});
    CHECK(r.status == 200);
    CHECK(r.body.size() == 4);
    CHECK(r.body.dump().find("\"S-1-1-0\"") == std::string::npos);
  }
  SUBCASE("membership") {
    const Reply r = get(router, "/membership", {{"sid", "S-1-1-0"}, {"direction", "members"}});
    CHECK(r.status == 200);
    REQUIRE(r.body.size() == 1);
    CHECK(r.body[0]["sid"] == kAlice.text());
  }
  SUBCASE("audit") {
    const Reply r = get(router, "/audit");
    CHECK(r.status == 200);
    REQUIRE(r.body.size() == 1);
    CHECK(r.body[0]["deny_source_path"] == "/Accounting");
  }
  SUBCASE("meta") {
    const Reply r = get(router, "/meta");
    CHECK(r.status == 200);
    CHECK(r.body["attributes"].size() == 14);
    CHECK(r.body["stats"]["folders"] == 4);
  }
}

TEST_CASE("router errors") {
  const ApiRouter router(shared_fixture("fig3_shadowed_deny"));
  auto check_error = [&](std::string_view endpoint, service::Query q, int status,
                         const std::string& code) {
    const Reply r = get(router, endpoint, std::move(q));
    CHECK(r.status == status);
    CHECK(r.body["code"] == code);
    CHECK(r.body.contains("message"));
    CHECK(r.body.contains("detail_path"));
  };
  check_error("/acl", {{"path", "/Nope"}}, 404, "PathNotFound");
  check_error("/acl", {}, 400, "BadQuery");
  check_error("/acl", {{"path", "/"}, {"bogus", "1"}}, 400, "BadQuery");
  check_error("/effective", {{"path", "/"}, {"principal", "S-1-5-21-0-0-0-1"}}, 404,
              "UnknownPrincipal");
  check_error("/effective", {{"path", "/"}, {"principal", "junk"}}, 400, "BadQuery");
  check_error("/effective", {{"path", "/"}, {"principal", kAlice.text()}, {"recursive", "maybe"}},
              400, "BadQuery");
  check_error("/tree", {{"depth", "-1"}}, 400, "BadQuery");
  check_error("/membership", {{"sid", kAlice.text()}, {"direction", "members"}}, 400, "NotAGroup");
  check_error("/nowhere", {}, 404, "NotFound");
}

TEST_CASE("http service answers over a socket") {
  service::HttpService http(shared_fixture("special_perm_demo"), {"127.0.0.1", 0, "*"});
  const int port = http.bind();
  REQUIRE(port > 0);
  std::thread worker([&] { http.listen(); });
  http.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/acl?path=/Shared");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(res->body.find("R-W-Dc-Rp-Cp") != std::string::npos);

  auto filtered = client.Get("/traverse?filter=S-1-1-0&filter=S-1-5-32-544&include_unchanged=true");
  REQUIRE(filtered);
  CHECK(filtered->status == 200);
  CHECK(filtered->body.find("S-1-1-0") == std::string::npos);
  CHECK(filtered->body.find("S-1-5-32-544") == std::string::npos);

  auto missing = client.Get("/acl?path=/Missing");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  http.stop();
  worker.join();
}
