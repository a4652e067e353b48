#include "aclens/membership.hpp"

#include <algorithm>
#include <deque>

#include "aclens/errors.hpp"

namespace aclens {

GroupGraph::GroupGraph(std::vector<Principal> principals, const std::vector<Membership>& edges)
    : principals_(std::move(principals)) {
  for (std::size_t i = 0; i < principals_.size(); ++i) {
    const auto& text = principals_[i].sid.text();
    if (!ids_.emplace(text, i).second) {
      throw Error(ErrorCode::InvalidSid, "principal declared twice: " + text, text);
    }
  }
  groups_of_.resize(principals_.size());
  members_of_.resize(principals_.size());

  for (const Membership& e : edges) {
    auto m = ids_.find(e.member.text());
    auto g = ids_.find(e.group.text());
    if (m == ids_.end()) {
      throw Error(ErrorCode::UnknownSid, "membership names undeclared member " + e.member.text(),
                  e.member.text());
    }
    if (g == ids_.end()) {
      throw Error(ErrorCode::UnknownSid, "membership names undeclared group " + e.group.text(),
                  e.group.text());
    }
    if (principals_[g->second].kind != PrincipalKind::Group) {
      throw Error(ErrorCode::NotAGroup, e.group.text() + " is not a group", e.group.text());
    }
    if (m->second == g->second) {
      throw Error(ErrorCode::InvalidSid, "self-membership for " + e.member.text(),
                  e.member.text());
    }
    auto& out = groups_of_[m->second];
    if (std::find(out.begin(), out.end(), g->second) != out.end()) continue;
    out.push_back(g->second);
    members_of_[g->second].push_back(m->second);
    ++edge_count_;
  }
  auto by_sid = [this](std::size_t a, std::size_t b) {
    return principals_[a].sid < principals_[b].sid;
  };
  for (auto& v : groups_of_) std::sort(v.begin(), v.end(), by_sid);
  for (auto& v : members_of_) std::sort(v.begin(), v.end(), by_sid);
}

std::size_t GroupGraph::require(const Sid& sid) const {
  auto it = ids_.find(sid.text());
  if (it == ids_.end()) {
    throw Error(ErrorCode::UnknownPrincipal, "unknown principal " + sid.text(), sid.text());
  }
  return it->second;
}

const Principal& GroupGraph::principal(const Sid& sid) const { return principals_[require(sid)]; }

const std::string& GroupGraph::label(const Sid& sid) const noexcept {
  auto it = ids_.find(sid.text());
  if (it == ids_.end()) return sid.text();
  return principals_[it->second].sid.label();
}

std::vector<std::size_t> GroupGraph::reach(
    std::size_t start, const std::vector<std::vector<std::size_t>>& adjacency) const {
  std::vector<bool> seen(principals_.size(), false);
  std::vector<std::size_t> stack{start};
  std::vector<std::size_t> out;
  seen[start] = true;
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    for (std::size_t next : adjacency[cur]) {
      if (seen[next]) continue;
      seen[next] = true;
      out.push_back(next);
      stack.push_back(next);
    }
  }
  return out;
}

std::vector<Sid> GroupGraph::cyclic_groups() const {
  std::vector<Sid> out;
  for (std::size_t i = 0; i < principals_.size(); ++i) {
    if (groups_of_[i].empty()) continue;
    for (std::size_t g : reach(i, groups_of_)) {
      if (std::find(groups_of_[g].begin(), groups_of_[g].end(), i) != groups_of_[g].end()) {
        out.push_back(principals_[i].sid);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Sid> GroupGraph::direct_groups(const Sid& sid) const {
  std::vector<Sid> out;
  for (std::size_t g : groups_of_[require(sid)]) out.push_back(principals_[g].sid);
  return out;
}

std::set<Sid> member_of_closure(const GroupGraph& graph, const Sid& sid) {
  std::set<Sid> out;
  for (std::size_t i : graph.reach(graph.require(sid), graph.groups_of_)) {
    out.insert(graph.principals_[i].sid);
  }
  // A cycle leads back to the start; the closure excludes it.
  out.erase(sid);
  return out;
}

std::set<Sid> members_closure(const GroupGraph& graph, const Sid& sid) {
  const std::size_t start = graph.require(sid);
  if (graph.principals_[start].kind != PrincipalKind::Group) {
    throw Error(ErrorCode::NotAGroup, sid.text() + " is not a group", sid.text());
  }
  std::set<Sid> out;
  for (std::size_t i : graph.reach(start, graph.members_of_)) {
    out.insert(graph.principals_[i].sid);
  }
  out.erase(sid);
  return out;
}

std::set<Sid> applicable_sids(const GroupGraph& graph, const Sid& sid) {
  std::set<Sid> out = member_of_closure(graph, sid);
  out.insert(graph.principal(sid).sid);
  return out;
}

std::optional<std::vector<Sid>> membership_chain(const GroupGraph& graph, const Sid& from,
                                                 const Sid& to) {
  const std::size_t start = graph.require(from);
  const std::size_t goal = graph.require(to);
  if (start == goal) return std::vector<Sid>{graph.principals_[start].sid};

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> prev(graph.principals_.size(), kUnset);
  std::deque<std::size_t> queue{start};
  prev[start] = start;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (cur == goal) break;
    for (std::size_t next : graph.groups_of_[cur]) {
      if (prev[next] != kUnset) continue;
      prev[next] = cur;
      queue.push_back(next);
    }
  }
  if (prev[goal] == kUnset) return std::nullopt;
  std::vector<Sid> chain;
  for (std::size_t at = goal; at != start; at = prev[at]) chain.push_back(graph.principals_[at].sid);
  chain.push_back(graph.principals_[start].sid);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace aclens
