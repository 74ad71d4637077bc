#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace tourney::detail {

// Dinic on an explicit arc list.
class Dinic {
 public:
  struct Arc {
    int to;
    int cap;
  };

  explicit Dinic(int n) : g_(n), level_(n), it_(n) {}

  int add_arc(int u, int v, int cap) {
    g_[u].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, cap});
    g_[v].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }

  int max_flow(int s, int t, int limit = std::numeric_limits<int>::max()) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (flow < limit) {
        int f = dfs(s, t, limit - flow);
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

  // Vertices reachable from s in the residual graph.
  std::vector<char> residual_reach(int s) const {
    std::vector<char> seen(g_.size(), 0);
    std::vector<int> st{s};
    seen[s] = 1;
    while (!st.empty()) {
      int u = st.back();
      st.pop_back();
      for (int id : g_[u]) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          st.push_back(a.to);
        }
      }
    }
    return seen;
  }

  // Flow on a forward arc = residual capacity of its reverse twin.
  int flow_on(int arc) const { return arcs_[arc ^ 1].cap; }
  const std::vector<int>& arcs_of(int u) const { return g_[u]; }
  const Arc& arc(int id) const { return arcs_[id]; }
  bool is_forward(int id) const { return (id & 1) == 0; }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : g_[u]) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(g_[u].size()); ++i) {
      int id = g_[u][i];
      Arc& a = arcs_[id];
      if (a.cap > 0 && level_[a.to] == level_[u] + 1) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          arcs_[id ^ 1].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> g_;
  std::vector<Arc> arcs_;
  std::vector<int> level_, it_;
};

}  // namespace tourney::detail
