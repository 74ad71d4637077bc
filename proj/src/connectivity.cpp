#include "tourney/connectivity.hpp"

#include <algorithm>
#include <deque>

namespace tourney {

namespace {

constexpr int kNone = -1;
constexpr int kSource = -2;
constexpr int kSink = -3;

// Unit vertex capacities with the usual in/out split; node 2v is in(v), 2v+1 is out(v).
// Residual arcs are generated from the bit rows so one search costs O(n^2/64).
class SplitFlow {
 public:
  SplitFlow(const Digraph& d, const VertexSet& a, const VertexSet& b, const VertexSet& alive)
      : d_(d), n_(d.n()), a_(a & alive), b_(b & alive), alive_(alive), pred_(n_, kNone), succ_(n_, kNone) {}

  bool augment() {
    int n = n_;
    int src = 2 * n;
    std::vector<int> parent(2 * n + 1, kNone);
    VertexSet seen_in(n), seen_out(n);
    std::deque<int> q;
    for (auto v = a_.find_first(); v != VertexSet::npos; v = a_.find_next(v)) {
      seen_in.set(v);
      parent[2 * v] = src;
      q.push_back(static_cast<int>(2 * v));
    }
    int end_out = kNone;
    while (!q.empty() && end_out == kNone) {
      int node = q.front();
      q.pop_front();
      int v = node >> 1;
      if ((node & 1) == 0) {
        if (pred_[v] == kNone) {
          if (!seen_out.test(v)) {
            seen_out.set(v);
            parent[2 * v + 1] = node;
            q.push_back(2 * v + 1);
          }
        } else if (pred_[v] >= 0) {
          int p = pred_[v];
          if (!seen_out.test(p)) {
            seen_out.set(p);
            parent[2 * p + 1] = node;
            q.push_back(2 * p + 1);
          }
        }
      } else {
        if (b_.test(v)) {
          end_out = v;
          break;
        }
        if (pred_[v] != kNone && !seen_in.test(v)) {
          seen_in.set(v);
          parent[2 * v] = node;
          q.push_back(2 * v);
        }
        VertexSet nxt = d_.out(v) & alive_;
        nxt -= seen_in;
        for (auto w = nxt.find_first(); w != VertexSet::npos; w = nxt.find_next(w)) {
          seen_in.set(w);
          parent[2 * w] = node;
          q.push_back(static_cast<int>(2 * w));
        }
      }
    }
    last_in_ = seen_in;
    last_out_ = seen_out;
    if (end_out == kNone) return false;

    std::vector<int> nodes{2 * end_out + 1};
    while (parent[nodes.back()] != src) nodes.push_back(parent[nodes.back()]);
    std::reverse(nodes.begin(), nodes.end());
    pred_[nodes.front() >> 1] = kSource;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      int x = nodes[i], y = nodes[i + 1];
      int u = x >> 1, w = y >> 1;
      bool x_out = x & 1, y_out = y & 1;
      if (x_out && !y_out && u != w) {  // forward edge u->w
        succ_[u] = w;
        pred_[w] = u;
      } else if (!x_out && y_out && u != w) {  // reverse edge w->u
        if (succ_[w] == u) succ_[w] = kNone;
        if (pred_[u] == w) pred_[u] = kNone;
      } else if (x_out && !y_out) {  // out(u)->in(u): u released
        succ_[u] = kNone;
      }
    }
    succ_[end_out] = kSink;
    return true;
  }

  PathSystem paths() const {
    PathSystem ps;
    for (int v = 0; v < n_; ++v) {
      if (pred_[v] != kSource) continue;
      Path p;
      int x = v;
      while (true) {
        p.vertices.push_back(x);
        if (succ_[x] == kSink) break;
        x = succ_[x];
      }
      ps.push_back(std::move(p));
    }
    return ps;
  }

  VertexSet cut() const {
    VertexSet c(n_);
    for (auto v = last_in_.find_first(); v != VertexSet::npos; v = last_in_.find_next(v))
      if (!last_out_.test(v)) c.set(v);
    return c;
  }

 private:
  const Digraph& d_;
  int n_;
  VertexSet a_, b_, alive_;
  std::vector<int> pred_, succ_;
  VertexSet last_in_, last_out_;
};

VertexSet reach(const Digraph& d, Vertex s, const VertexSet& alive, bool forward) {
  VertexSet seen(d.n());
  seen.set(s);
  std::vector<Vertex> st{s};
  while (!st.empty()) {
    Vertex u = st.back();
    st.pop_back();
    VertexSet nxt = (forward ? d.out(u) : d.in(u)) & alive;
    nxt -= seen;
    for (auto w = nxt.find_first(); w != VertexSet::npos; w = nxt.find_next(w)) {
      seen.set(w);
      st.push_back(static_cast<Vertex>(w));
    }
  }
  return seen;
}

}  // namespace

MengerResult menger_paths(const Digraph& d, const VertexSet& a, const VertexSet& b, int k, const VertexSet* alive) {
  VertexSet all = alive ? *alive : full_set(d.n());
  if (static_cast<int>((a & all).count()) < k || static_cast<int>((b & all).count()) < k)
    throw PreconditionError("|A|,|B| >= k", "endpoint sets smaller than k=" + std::to_string(k));
  SplitFlow f(d, a, b, all);
  MengerResult r;
  int got = 0;
  while (got < k && f.augment()) ++got;
  if (got == k) {
    r.success = true;
    r.paths = f.paths();
  } else {
    r.cut = f.cut();
  }
  return r;
}

VertexSet reachable_from(const Digraph& d, Vertex s, const VertexSet& alive) { return reach(d, s, alive, true); }

bool is_strongly_connected(const Digraph& d, const VertexSet& alive) {
  auto s = alive.find_first();
  if (s == VertexSet::npos) return true;
  return reach(d, static_cast<Vertex>(s), alive, true) == alive && reach(d, static_cast<Vertex>(s), alive, false) == alive;
}

bool is_strongly_connected(const Digraph& d) { return is_strongly_connected(d, full_set(d.n())); }

VertexSet sink_component(const Digraph& d, const VertexSet& alive) {
  auto s = alive.find_first();
  if (s == VertexSet::npos) return VertexSet(d.n());
  VertexSet r = reach(d, static_cast<Vertex>(s), alive, true);
  // reach(w) is a subset of r for w in r, so each shrink is permanent.
  for (auto w = r.find_first(); w != VertexSet::npos; w = r.find_next(w)) {
    VertexSet rw = reach(d, static_cast<Vertex>(w), alive, true);
    if (rw != r) r = rw;
  }
  return r;
}

int local_vertex_connectivity(const Digraph& d, Vertex u, Vertex v, int cap, VertexSet* cut) {
  if (u == v || d.has_edge(u, v))
    throw PreconditionError("non-edge", "local connectivity needs u->v absent");
  VertexSet alive = full_set(d.n());
  alive.reset(u);
  alive.reset(v);
  SplitFlow f(d, d.out(u), d.in(v), alive);
  int got = 0;
  while (got < cap && f.augment()) ++got;
  if (got < cap && cut) *cut = f.cut();
  return got;
}

VertexCutReport connectivity(const Digraph& d) {
  VertexCutReport r;
  int n = d.n();
  if (n <= 1) return r;
  if (!is_strongly_connected(d)) {
    r.witness_cut = VertexSet(n);
    return r;
  }
  int best = n - 1;
  for (int i = 0; i < n && i < best; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int dir = 0; dir < 2; ++dir) {
        Vertex u = dir ? j : i, v = dir ? i : j;
        if (d.has_edge(u, v)) continue;
        VertexSet cut;
        int c = local_vertex_connectivity(d, u, v, best, &cut);
        if (c < best) {
          best = c;
          r.witness_cut = cut;
        }
      }
    }
  }
  r.kappa = best;
  return r;
}

bool is_strongly_k_connected(const Digraph& d, int k) {
  int n = d.n();
  if (k <= 0) return true;
  if (n <= k) return false;
  if (!is_strongly_connected(d)) return false;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!d.has_edge(i, j) && local_vertex_connectivity(d, i, j, k) < k) return false;
      if (!d.has_edge(j, i) && local_vertex_connectivity(d, j, i, k) < k) return false;
    }
  return true;
}

}  // namespace tourney
