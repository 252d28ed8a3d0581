#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace gibbscut {

/// Dinic's algorithm over an exact integer capacity type (std::int64_t or a
/// big integer). Arcs are stored in pairs; arc e and e ^ 1 are mutual reverses.
template <typename Cap>
class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : head_(nodes, -1) {}

  std::size_t nodes() const { return head_.size(); }

  void add_arc(std::size_t from, std::size_t to, const Cap& cap) {
    push(from, to, cap);
    push(to, from, Cap(0));
  }

  Cap run(std::size_t s, std::size_t t) {
    Cap flow = 0;
    while (build_levels(s, t)) {
      it_.assign(head_.begin(), head_.end());
      while (true) {
        Cap pushed = augment(s, t);
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  /// Nodes reachable from s through arcs with residual capacity.
  std::vector<bool> reachable_from(std::size_t s) const {
    std::vector<bool> seen(nodes(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (int e = head_[u]; e != -1; e = arcs_[e].next) {
        auto v = arcs_[e].to;
        if (!seen[v] && arcs_[e].cap > 0) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

  /// Nodes that can reach t through arcs with residual capacity.
  std::vector<bool> reaching(std::size_t t) const {
    std::vector<bool> seen(nodes(), false);
    std::vector<std::size_t> stack{t};
    seen[t] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      // Residual arc u -> v is the reverse of an arc stored at v.
      for (int e = head_[v]; e != -1; e = arcs_[e].next) {
        auto u = arcs_[e].to;
        if (!seen[u] && arcs_[e ^ 1].cap > 0) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    int next;
    Cap cap;
  };

  void push(std::size_t from, std::size_t to, const Cap& cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size() - 1);
  }

  bool build_levels(std::size_t s, std::size_t t) {
    level_.assign(nodes(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = arcs_[e].next) {
        if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
          level_[arcs_[e].to] = level_[u] + 1;
          q.push(arcs_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // One blocking-flow augmentation along a shortest path, iterative DFS.
  Cap augment(std::size_t s, std::size_t t) {
    std::vector<int> path;  // arc ids
    std::size_t u = s;
    while (true) {
      if (u == t) {
        Cap bottleneck = arcs_[path.front()].cap;
        for (int e : path)
          if (arcs_[e].cap < bottleneck) bottleneck = arcs_[e].cap;
        for (int e : path) {
          arcs_[e].cap -= bottleneck;
          arcs_[e ^ 1].cap += bottleneck;
        }
        return bottleneck;
      }
      int& e = it_[u];
      while (e != -1 && !(arcs_[e].cap > 0 && level_[arcs_[e].to] == level_[u] + 1))
        e = arcs_[e].next;
      if (e == -1) {
        // Dead end: retreat.
        level_[u] = -1;
        if (path.empty()) return Cap(0);
        int back = path.back();
        path.pop_back();
        u = arcs_[back ^ 1].to;
        it_[u] = arcs_[it_[u]].next;
        continue;
      }
      path.push_back(e);
      u = arcs_[e].to;
    }
  }

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace gibbscut
