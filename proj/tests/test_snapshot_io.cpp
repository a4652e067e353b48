#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "aclens/errors.hpp"
#include "aclens/snapshot_io.hpp"
#include "aclens/traversal.hpp"
#include "test_support.hpp"

using namespace aclens;
using namespace aclens::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<ErrorCode, std::string> failure(std::string_view text) {
  try {
    parse_snapshot(text);
  } catch (const Error& e) {
    return {e.code(), e.detail_path()};
  }
  return {ErrorCode::BadParameters, "<parsed>"};
}

const char* kMinimal = R"({
  "format_version": 1,
  "principals": [{"sid": "S-1-5-21-1-1-1-1001", "kind": "user"}],
  "memberships": [],
  "tree": {"name": "", "kind": "folder"}
})";

std::string with_ace(const std::string& ace) {
  return R"({"format_version": 1,
    "principals": [{"sid": "S-1-1-0", "kind": "group"}],
    "memberships": [],
    "tree": {"name": "", "kind": "folder", "children": [{"name": "a", "kind": "folder", "aces": [)" +
         ace + "]}]}}";
}

}  // namespace

TEST_CASE("minimal document") {
  const Snapshot snap = parse_snapshot(kMinimal);
  CHECK(snap.principals.size() == 1);
  CHECK(snap.tree.children.empty());
  CHECK(snap.tree.owner.text() == "S-1-5-32-544");
  const LoadedSnapshot loaded = load_tree(snap);
  CHECK(loaded.tree.acl("/").empty());
  CHECK(loaded.warnings.empty());
}

TEST_CASE("shadowed-deny document audits to one finding") {
  const LoadedSnapshot loaded = load_fixture("fig3_shadowed_deny");
  CHECK(audit_shadowed_denies(loaded.tree, "/", loaded.graph).size() == 1);
}

TEST_CASE("mask spellings") {
  const auto mask_of_doc = [](const std::string& spelled) {
    const Snapshot s = parse_snapshot(
        with_ace(R"({"principal_sid": "S-1-1-0", "kind": "allow", "mask": ")" + spelled + "\"}"));
    return s.tree.children.at(0).explicit_aces.at(0).mask().bits();
  };
  CHECK(mask_of_doc("Modify") == masks::kModify);
  CHECK(mask_of_doc("0x001301bf") == masks::kModify);
  CHECK(mask_of_doc("0x80000000") == masks::kRead);
  CHECK(mask_of_doc("R-W-Dc-Rp-Cp") == 0x00060043u);
  CHECK(mask_of_doc("ListFolderContents") == masks::kReadAndExecute);
}

TEST_CASE("errors carry a pointer to the offending element") {
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-1-0", "kind": "allow", "mask": "Read", "flags": ["inherit_only"]})")) ==
        std::pair{ErrorCode::BadFlags, std::string("/tree/children/0/aces/0/flags")});
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-1-0", "kind": "allow", "mask": "R-Q"})")) ==
        std::pair{ErrorCode::BadMask, std::string("/tree/children/0/aces/0/mask")});
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-1-0", "kind": "allow", "mask": "0x01000000"})")).first ==
        ErrorCode::BadMask);
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-1-0", "kind": "allow", "mask": "0x00000000"})")).first ==
        ErrorCode::BadMask);
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-5-9", "kind": "allow", "mask": "Read"})")) ==
        std::pair{ErrorCode::UnknownSid, std::string("/tree/children/0/aces/0/principal_sid")});
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-1-0", "kind": "maybe", "mask": "Read"})")) ==
        std::pair{ErrorCode::SchemaError, std::string("/tree/children/0/aces/0/kind")});
  CHECK(failure(with_ace(R"({"principal_sid": "S-1-1-0", "kind": "allow", "mask": "Read", "extra": 1})")) ==
        std::pair{ErrorCode::SchemaError, std::string("/tree/children/0/aces/0/extra")});
  CHECK(failure("{").first == ErrorCode::SchemaError);
  CHECK(failure("[]").first == ErrorCode::SchemaError);
  CHECK(failure(R"({"format_version": 2, "principals": [], "memberships": [], "tree": {"name": "", "kind": "folder"}})") ==
        std::pair{ErrorCode::SchemaError, std::string("/format_version")});
  CHECK(failure(R"({"format_version": 1, "principals": [], "memberships": [], "tree": {"name": "", "kind": "file"}})")
            .first == ErrorCode::SchemaError);
  CHECK(failure(R"({"format_version": 1, "principals": [{"sid": "S-1-1-0", "kind": "user"}],
                    "memberships": [{"member_sid": "S-1-1-0", "group_sid": "S-1-1-0"}],
                    "tree": {"name": "", "kind": "folder"}})")
            .first == ErrorCode::SchemaError);
  CHECK(failure(R"({"format_version": 1, "principals": [], "memberships": [],
                    "tree": {"name": "", "kind": "folder", "children": [{"name": "x", "kind": "folder"}, {"name": "x", "kind": "file"}]}})") ==
        std::pair{ErrorCode::SchemaError, std::string("/tree/children/1/name")});
}

TEST_CASE("bad_flags data file is rejected") {
  try {
    load_data("bad_flags");
    FAIL("expected BadFlags");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadFlags);
    CHECK(e.detail_path() == "/tree/aces/0/flags");
  }
  try {
    load_snapshot_file("/nonexistent/snapshot.json");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
}

TEST_CASE("mutated documents fail cleanly") {
  const std::string base = read_file(fixture_path("users_dir_demo"));
  std::mt19937_64 rng(3);
  const std::string alphabet = "{}[]\",:0123456789abcdefSx- \n";
  int parsed = 0;
  for (int round = 0; round < 2000; ++round) {
    std::string doc = base;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits; ++k) {
      const std::size_t at = rng() % doc.size();
      switch (rng() % 3) {
        case 0: doc.erase(at, 1 + rng() % 8); break;
        case 1: doc.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
        default: doc[at] = alphabet[rng() % alphabet.size()]; break;
      }
      if (doc.empty()) doc = "x";
    }
    try {
      load_tree(parse_snapshot(doc));
      ++parsed;
    } catch (const Error&) {
      // expected for most mutations
    }
  }
  CHECK(parsed < 2000);
}

TEST_CASE("serialization round trip") {
  for (const char* name : {"fig3_shadowed_deny", "users_dir_demo", "special_perm_demo"}) {
    const Snapshot snap = parse_snapshot(read_file(fixture_path(name)));
    const std::string once = serialize_snapshot(snap);
    const Snapshot again = parse_snapshot(once);
    CHECK(serialize_snapshot(again) == once);
    const LoadedSnapshot a = load_tree(snap);
    const LoadedSnapshot b = load_tree(again);
    REQUIRE(a.tree.size() == b.tree.size());
    for (NodeId id = 0; id < a.tree.size(); ++id) {
      CHECK(a.tree.path(id) == b.tree.path(id));
      CHECK(a.tree.acl(id) == b.tree.acl(id));
      CHECK(a.tree.node(id).owner == b.tree.node(id).owner);
    }
  }
  const Snapshot synthetic = generate_synthetic(
      {.seed = 9, .folders = 80, .principals = 8, .max_depth = 5, .ace_density = 0.5, .files = 10});
  const std::string text = serialize_snapshot(synthetic);
  CHECK(serialize_snapshot(parse_snapshot(text)) == text);
}

TEST_CASE("generate_synthetic") {
  SUBCASE("single empty root") {
    const Snapshot s = generate_synthetic(
        {.seed = 1, .folders = 1, .principals = 1, .max_depth = 1, .ace_density = 0.0});
    CHECK(s.tree.children.empty());
    CHECK(s.tree.explicit_aces.empty());
    CHECK(s.principals.size() == 1);
  }
  SUBCASE("deterministic") {
    const SyntheticParams p{.seed = 42, .folders = 50, .principals = 6, .max_depth = 6,
                            .ace_density = 0.3};
    CHECK(serialize_snapshot(generate_synthetic(p)) == serialize_snapshot(generate_synthetic(p)));
    SyntheticParams q = p;
    q.seed = 43;
    CHECK(serialize_snapshot(generate_synthetic(p)) != serialize_snapshot(generate_synthetic(q)));
  }
  SUBCASE("shape bounds") {
    const Snapshot s = generate_synthetic(
        {.seed = 42, .folders = 50, .principals = 6, .max_depth = 6, .ace_density = 0.3, .files = 7});
    const LoadedSnapshot loaded = load_tree(s);
    std::size_t folders = 0, files = 0;
    for (NodeId id = 0; id < loaded.tree.size(); ++id) {
      if (loaded.tree.node(id).kind == NodeKind::Folder) {
        ++folders;
        CHECK(loaded.tree.depth(id) <= 6);
      } else {
        ++files;
      }
    }
    CHECK(folders == 50);
    CHECK(files == 7);
    CHECK(s.principals.size() == 6);
  }
  SUBCASE("bad parameters") {
    for (const SyntheticParams& p :
         {SyntheticParams{.folders = 0}, SyntheticParams{.principals = 0},
          SyntheticParams{.ace_density = 1.5}, SyntheticParams{.folders = 3, .max_depth = 0}}) {
      try {
        generate_synthetic(p);
        FAIL("expected BadParameters");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadParameters);
      }
    }
  }
}
