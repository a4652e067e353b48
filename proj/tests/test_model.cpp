#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "aclens/errors.hpp"
#include "aclens/fs_tree.hpp"
#include "aclens/propagation.hpp"
#include "test_support.hpp"

using namespace aclens;
using namespace aclens::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an aclens::Error");
  return ErrorCode::BadParameters;
}

}  // namespace

TEST_CASE("sid validation and equality") {
  CHECK(Sid::is_valid("S-1-5-32-545"));
  CHECK(Sid::is_valid("S-1-1"));
  CHECK_FALSE(Sid::is_valid("S-1"));
  CHECK_FALSE(Sid::is_valid("S-"));
  CHECK_FALSE(Sid::is_valid("S-1--5"));
  CHECK_FALSE(Sid::is_valid("S-1-5-"));
  CHECK_FALSE(Sid::is_valid("s-1-5"));
  CHECK_FALSE(Sid::is_valid("S-1-x"));
  CHECK(code_of([] { Sid("Everyone"); }) == ErrorCode::InvalidSid);

  // display_name is presentation only
  CHECK(Sid("S-1-1-0", "Everyone") == Sid("S-1-1-0"));
  CHECK(std::hash<Sid>{}(Sid("S-1-1-0", "Everyone")) == std::hash<Sid>{}(Sid("S-1-1-0")));
  CHECK(Sid("S-1-1-0", "Everyone").label() == "Everyone");
  CHECK(Sid("S-1-1-0").label() == "S-1-1-0");
}

TEST_CASE("reserved mask bits are rejected") {
  for (unsigned bit = 24; bit < 28; ++bit) {
    CHECK(code_of([&] { AccessMask(1u << bit); }) == ErrorCode::BadMask);
    CHECK(code_of([&] { allow(kEveryone, 0x1u | (1u << bit)); }) == ErrorCode::BadMask);
  }
  CHECK_NOTHROW(AccessMask(0xF0FFFFFFu));
}

TEST_CASE("ace invariants") {
  CHECK(code_of([] { allow(kEveryone, 0); }) == ErrorCode::InvalidAce);
  CHECK(code_of([] { allow(kEveryone, 1, InheritFlags{false, false, false, true}); }) ==
        ErrorCode::BadFlags);
  CHECK(code_of([] { allow(kEveryone, 1, InheritFlags{false, false, true, false}); }) ==
        ErrorCode::BadFlags);
  CHECK(code_of([] { Provenance::inherited(0); }) == ErrorCode::InvalidAce);
  CHECK_NOTHROW(allow(kEveryone, 1, InheritFlags{false, true, true, true}));
}

TEST_CASE("canonicalize_acl examples") {
  const Ace explicit_deny = deny(kEveryone, masks::kFullControl);
  const Ace inherited_allow = inherited(allow(kAlice, masks::kRead), 1);

  SUBCASE("explicit deny moves ahead of inherited allow") {
    const Acl acl = canonicalize_acl({inherited_allow, explicit_deny});
    REQUIRE(acl.size() == 2);
    CHECK(acl.entries[0] == explicit_deny);
    CHECK(acl.entries[1] == inherited_allow);
  }
  SUBCASE("empty") { CHECK(canonicalize_acl({}).empty()); }
  SUBCASE("inherited denies by distance after explicit allow") {
    const Ace d2 = inherited(deny(kEveryone, masks::kWrite), 2);
    const Ace d1 = inherited(deny(kEveryone, masks::kWrite), 1);
    const Ace ea = allow(kAlice, masks::kRead);
    const Acl acl = canonicalize_acl({d2, d1, ea});
    CHECK(acl.entries == std::vector<Ace>{ea, d1, d2});
  }
}

TEST_CASE("canonical order matches a brute-force search over all orderings") {
  // For small lists, enumerate every permutation; the canonical result must
  // be the tier-sorted permutation that keeps input order among ties.
  std::mt19937_64 rng(7);
  const Sid who[] = {kEveryone, kAlice};
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<Ace> input;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t distance = static_cast<std::uint32_t>(rng() % 3);
      Ace ace(who[rng() % 2], rng() % 2 ? AceKind::Allow : AceKind::Deny,
              AccessMask(static_cast<std::uint32_t>(1 + rng() % 7)));
      input.push_back(distance == 0 ? ace : ace.inherited_copy({}, distance));
    }
    auto tier = [](const Ace& a) {
      const std::uint32_t d = a.provenance().distance();
      // explicit-deny, explicit-allow, then (deny, allow) per distance
      return d == 0 ? (a.is_deny() ? 0u : 1u) : 2 * d + (a.is_deny() ? 0u : 1u);
    };
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best;
    do {
      bool ordered = true;
      for (std::size_t i = 1; i < n && ordered; ++i) {
        const auto a = tier(input[perm[i - 1]]);
        const auto b = tier(input[perm[i]]);
        ordered = a < b || (a == b && perm[i - 1] < perm[i]);
      }
      if (ordered) {
        CHECK(best.empty());
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(best.size() == n);
    const Acl acl = canonicalize_acl(input);
    for (std::size_t i = 0; i < n; ++i) CHECK(acl.entries[i] == input[best[i]]);
  }
}

TEST_CASE("canonicalization is idempotent and insensitive to shuffles") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<Ace> entries;
    const std::size_t n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t d = static_cast<std::uint32_t>(rng() % 4);
      // distinct masks so shuffles cannot reorder indistinguishable ties
      Ace ace(kAlice, rng() % 2 ? AceKind::Allow : AceKind::Deny,
              AccessMask(static_cast<std::uint32_t>(1u << i)));
      entries.push_back(d == 0 ? ace : ace.inherited_copy({}, d));
    }
    const Acl once = canonicalize_acl(entries);
    CHECK(canonicalize_acl(once.entries) == once);
    // Shuffles only change the relative order of equal-tier entries, so the
    // tier sequence of the canonical output is invariant.
    std::shuffle(entries.begin(), entries.end(), rng);
    const Acl shuffled = canonicalize_acl(entries);
    REQUIRE(shuffled.size() == once.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(precedence_tier(shuffled.entries[i]) == precedence_tier(once.entries[i]));
    }
    CHECK(std::is_permutation(shuffled.entries.begin(), shuffled.entries.end(),
                              once.entries.begin(), once.entries.end()));
  }
}

TEST_CASE("acl_equal ignores provenance distance only") {
  const Ace a = allow(kEveryone, masks::kRead, kCIOI);
  const Acl x = canonicalize_acl({a});
  CHECK(acl_equal(x, x));
  CHECK(acl_equal(x, canonicalize_acl({inherited(a, 3)})));
  CHECK_FALSE(acl_equal(x, canonicalize_acl({allow(kEveryone, masks::kRead, kCI)})));
  CHECK_FALSE(acl_equal(x, canonicalize_acl({deny(kEveryone, masks::kRead, kCIOI)})));
  CHECK_FALSE(acl_equal(x, canonicalize_acl({a, a})));

  // transitivity and symmetry over a small family
  const std::vector<Acl> family = {x, canonicalize_acl({inherited(a, 1)}),
                                   canonicalize_acl({inherited(a, 2)}), canonicalize_acl({})};
  for (const auto& p : family) {
    for (const auto& q : family) {
      CHECK(acl_equal(p, q) == acl_equal(q, p));
      for (const auto& r : family) {
        if (acl_equal(p, q) && acl_equal(q, r)) CHECK(acl_equal(p, r));
      }
    }
  }
}

TEST_CASE("acl_equal on materialized parent and child") {
  const FsTree tree = materialize_inheritance(FsTree(folder(
      "", {}, {folder("Team", {allow(kEveryone, masks::kModify, kCIOI)}, {folder("Sub")})})));
  CHECK(acl_equal(tree.acl("/Team"), tree.acl("/Team/Sub")));
  CHECK_FALSE(acl_equal(tree.acl("/"), tree.acl("/Team")));
}

TEST_CASE("resolve_path") {
  const FsTree tree(folder("", {}, {folder("Accounting", {}, {folder("Plan"), file("a.txt")})}));
  CHECK(&resolve_path(tree, "/") == &tree.root());
  CHECK(&resolve_path(tree, "") == &tree.root());
  CHECK(resolve_path(tree, "/Accounting/Plan").name == "Plan");
  CHECK(resolve_path(tree, "Accounting/Plan/").name == "Plan");
  CHECK(code_of([&] { resolve_path(tree, "/Accounting/Missing"); }) == ErrorCode::PathNotFound);
  CHECK(code_of([&] { resolve_path(tree, "/Accounting//Plan"); }) == ErrorCode::PathNotFound);
  CHECK(code_of([&] { resolve_path(tree, "/Accounting/a.txt/x"); }) == ErrorCode::NotAFolder);
  CHECK(resolve_path(tree, "/Accounting/a.txt").kind == NodeKind::File);
}

TEST_CASE("tree validation and ordering") {
  CHECK(code_of([] { FsTree(folder("", {}, {folder("x"), folder("x")})); }) ==
        ErrorCode::InvalidTree);
  CHECK(code_of([] { FsTree(folder("", {}, {folder("a/b")})); }) == ErrorCode::InvalidTree);
  CHECK(code_of([] {
          FsNode f = file("f");
          f.children.push_back(folder("x"));
          FsTree(folder("", {}, {f}));
        }) == ErrorCode::InvalidTree);
  CHECK(code_of([] { FsTree(folder("", {inherited(allow(kEveryone, 1), 1)})); }) ==
        ErrorCode::InvalidTree);

  const FsTree tree(folder("", {}, {folder("b", {}, {folder("z"), folder("y")}), folder("a")}));
  std::vector<std::string> order;
  for (NodeId id = 0; id < tree.size(); ++id) order.push_back(tree.path(id));
  CHECK(order == std::vector<std::string>{"/", "/a", "/b", "/b/y", "/b/z"});
  CHECK(tree.subtree_end(0) == 5);
  CHECK(tree.subtree_end(2) == 5);
  CHECK(tree.depth(3) == 2);
  CHECK(code_of([&] { tree.acl(0); }) == ErrorCode::NotMaterialized);
}
