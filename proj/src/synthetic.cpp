#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>

#include "aclens/errors.hpp"
#include "aclens/mask_semantics.hpp"
#include "aclens/snapshot_io.hpp"

namespace aclens {

namespace {

// std::mt19937_64 output is fixed by the standard; the distributions are
// not, so sampling is done by hand to keep snapshots identical everywhere.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<InheritFlags, 10> kFolderFlags = {{
    {false, false, false, false},
    {true, false, false, false},
    {false, true, false, false},
    {true, true, false, false},
    {true, false, true, false},
    {true, true, true, false},
    {true, false, false, true},
    {true, true, false, true},
    {false, true, false, true},
    {false, true, true, false},
}};

constexpr std::array<std::uint32_t, 5> kCoarseMasks = {
    masks::kFullControl, masks::kModify, masks::kReadAndExecute, masks::kRead, masks::kWrite};

}  // namespace

Snapshot generate_synthetic(const SyntheticParams& params) {
  if (params.folders == 0) throw Error(ErrorCode::BadParameters, "folders must be at least 1");
  if (params.principals == 0) throw Error(ErrorCode::BadParameters, "principals must be at least 1");
  if (!(params.ace_density >= 0.0 && params.ace_density <= 1.0)) {
    throw Error(ErrorCode::BadParameters, "ace_density must lie in [0, 1]");
  }
  if (params.max_depth == 0 && params.folders > 1) {
    throw Error(ErrorCode::BadParameters, "max_depth 0 only allows a single folder");
  }

  Sampler rng(params.seed);
  Snapshot snap;

  // Principal 0 is Everyone; roughly a third of the rest are groups.
  const std::size_t group_count = params.principals == 1 ? 1 : 1 + (params.principals - 1) / 3;
  std::vector<std::size_t> groups;
  std::vector<std::size_t> users;
  for (std::size_t i = 0; i < params.principals; ++i) {
    if (i == 0) {
      snap.principals.push_back({Sid("S-1-1-0", "Everyone"), PrincipalKind::Group});
      groups.push_back(i);
    } else if (i < group_count) {
      snap.principals.push_back({Sid("S-1-5-21-1000-2000-3000-" + std::to_string(5000 + i),
                                     "SYN\\group" + std::to_string(i)),
                                 PrincipalKind::Group});
      groups.push_back(i);
    } else {
      snap.principals.push_back({Sid("S-1-5-21-1000-2000-3000-" + std::to_string(1000 + i),
                                     "SYN\\user" + std::to_string(i)),
                                 PrincipalKind::User});
      users.push_back(i);
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto add_edge = [&](std::size_t member, std::size_t group) {
    if (member == group || !edges.emplace(member, group).second) return;
    snap.memberships.push_back({snap.principals[member].sid, snap.principals[group].sid});
  };
  for (std::size_t u : users) {
    add_edge(u, 0);
    if (groups.size() > 1) {
      const std::size_t extra = rng.below(3);
      for (std::size_t k = 0; k < extra; ++k) add_edge(u, groups[1 + rng.below(groups.size() - 1)]);
    }
  }
  for (std::size_t g : groups) {
    if (g != 0 && rng.chance(0.3)) add_edge(g, groups[rng.below(groups.size())]);
  }

  // Tree shape: flat arrays first, nested FsNode built at the end.
  struct Proto {
    std::size_t parent;
    std::size_t depth;
    FsNode node;
  };
  std::vector<Proto> protos;
  protos.push_back({0, 0, FsNode{"", NodeKind::Folder, Sid("S-1-5-32-544"), {}, {}}});
  std::vector<std::size_t> open_folders{0};
  for (std::size_t i = 1; i < params.folders; ++i) {
    const std::size_t slot = rng.below(open_folders.size());
    const std::size_t parent = open_folders[slot];
    const std::size_t depth = protos[parent].depth + 1;
    protos.push_back({parent, depth, FsNode{"f" + std::to_string(i), NodeKind::Folder,
                                            protos[parent].node.owner, {}, {}}});
    if (depth < params.max_depth) open_folders.push_back(protos.size() - 1);
  }
  const std::size_t folder_count = protos.size();
  for (std::size_t i = 0; i < params.files; ++i) {
    const std::size_t parent = rng.below(folder_count);
    protos.push_back({parent, protos[parent].depth + 1,
                      FsNode{"file" + std::to_string(i) + ".txt", NodeKind::File,
                             protos[parent].node.owner, {}, {}}});
  }

  for (Proto& p : protos) {
    if (!rng.chance(params.ace_density)) continue;
    const std::size_t count = 1 + rng.below(4);
    for (std::size_t k = 0; k < count; ++k) {
      const Sid& who = snap.principals[rng.below(snap.principals.size())].sid;
      const AceKind kind = rng.chance(0.3) ? AceKind::Deny : AceKind::Allow;
      std::uint32_t bits;
      if (rng.chance(0.5)) {
        bits = kCoarseMasks[rng.below(kCoarseMasks.size())];
      } else {
        const auto ordinals = static_cast<std::uint16_t>(1 + rng.below((1u << kAttributeCount) - 1));
        bits = mask_of(AttributeSet::from_ordinals(ordinals)).bits();
      }
      const InheritFlags flags = p.node.kind == NodeKind::Folder
                                     ? kFolderFlags[rng.below(kFolderFlags.size())]
                                     : InheritFlags{};
      p.node.explicit_aces.emplace_back(Sid(who.text()), kind, AccessMask(bits), flags);
    }
  }

  // Children were appended after their parents, so folding back to front
  // assembles every subtree before it is moved into its parent.
  for (std::size_t i = protos.size(); i-- > 1;) {
    FsNode& node = protos[i].node;
    std::reverse(node.children.begin(), node.children.end());
    protos[protos[i].parent].node.children.push_back(std::move(node));
  }
  std::reverse(protos[0].node.children.begin(), protos[0].node.children.end());
  snap.tree = std::move(protos[0].node);
  return snap;
}

}  // namespace aclens
