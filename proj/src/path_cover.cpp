#include "tourney/path_cover.hpp"

#include <algorithm>
#include <set>

#include "tourney/hamilton.hpp"

namespace tourney {

bool is_path_cover(const Digraph& d, const PathSystem& ps, const VertexSet* alive) {
  VertexSet want = alive ? *alive : full_set(d.n());
  VertexSet seen(d.n());
  for (const Path& p : ps) {
    if (!validate_path(d, p)) return false;
    for (Vertex v : p.vertices) {
      if (seen.test(v)) return false;
      seen.set(v);
    }
  }
  return seen == want;
}

PathSystem CoverPartition::all() const {
  PathSystem r = part1;
  r.insert(r.end(), part2.begin(), part2.end());
  return r;
}

namespace {

class GallaiMilgram {
 public:
  GallaiMilgram(const Digraph& d, PathSystem& paths) : d_(d), paths_(paths) {}

  // Either rewrites paths_ into a cover of the same vertices with a strictly smaller
  // head set and returns true, or leaves it untouched and fills `indep`.
  bool improve(std::vector<Vertex>& indep) {
    VertexSet hs(d_.n());
    for (const Path& p : paths_) hs.set(p.head());
    Vertex hi = -1, hj = -1;
    for (auto h = hs.find_first(); h != VertexSet::npos && hi < 0; h = hs.find_next(h)) {
      VertexSet o = d_.out(h) & hs;
      auto t = o.find_first();
      if (t != VertexSet::npos) {
        hi = static_cast<Vertex>(h);
        hj = static_cast<Vertex>(t);
      }
    }
    if (hi < 0) {
      indep = members(hs);
      return false;
    }
    std::size_t pj = find_head(hj);
    if (paths_[pj].size() == 1) {
      paths_.erase(paths_.begin() + static_cast<std::ptrdiff_t>(pj));
      paths_[find_head(hi)].vertices.push_back(hj);
      return true;
    }
    Vertex u = paths_[pj].vertices[paths_[pj].size() - 2];
    paths_[pj].vertices.pop_back();
    bool ok = improve(indep);
    if (!ok) {
      paths_[find_head(u)].vertices.push_back(hj);
      return false;
    }
    if (auto at = try_find_head(u); at != paths_.size()) {
      paths_[at].vertices.push_back(hj);
    } else if (auto at2 = try_find_head(hi); at2 != paths_.size()) {
      paths_[at2].vertices.push_back(hj);
    } else {
      paths_.push_back(Path({hj}));
    }
    return true;
  }

 private:
  std::size_t try_find_head(Vertex h) const {
    for (std::size_t i = 0; i < paths_.size(); ++i)
      if (paths_[i].head() == h) return i;
    return paths_.size();
  }
  std::size_t find_head(Vertex h) const { return try_find_head(h); }

  const Digraph& d_;
  PathSystem& paths_;
};

}  // namespace

PathSystem gallai_milgram_cover(const Digraph& d, const VertexSet* alive_p, std::vector<Vertex>* witness) {
  VertexSet alive = alive_p ? *alive_p : full_set(d.n());
  PathSystem paths;
  VertexSet left = alive;
  for (auto s = left.find_first(); s != VertexSet::npos; s = left.find_first()) {
    Path p({static_cast<Vertex>(s)});
    left.reset(s);
    for (;;) {
      VertexSet nb = d.out(p.head()) & left;
      auto w = nb.find_first();
      if (w == VertexSet::npos) break;
      p.vertices.push_back(static_cast<Vertex>(w));
      left.reset(w);
    }
    paths.push_back(std::move(p));
  }
  GallaiMilgram gm(d, paths);
  std::vector<Vertex> indep;
  while (gm.improve(indep)) {
  }
  if (witness) *witness = indep;
  return paths;
}

namespace {

struct Position {
  int path = -1;
  int idx = -1;
};

std::vector<Position> positions(int n, const PathSystem& ps) {
  std::vector<Position> pos(n);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps[i].size(); ++j) pos[ps[i].vertices[j]] = {static_cast<int>(i), static_cast<int>(j)};
  return pos;
}

VertexSet edge_vertices(int n, const std::vector<Edge>& f) {
  VertexSet s(n);
  for (const Edge& e : f) {
    s.set(e.from);
    s.set(e.to);
  }
  return s;
}

std::set<Edge> edge_set(const PathSystem& ps) {
  std::set<Edge> r;
  for (const Path& p : ps)
    for (const Edge& e : p.edges()) r.insert(e);
  return r;
}

int count_in(const std::vector<Vertex>& vs, const VertexSet& s) {
  int c = 0;
  for (Vertex v : vs) c += s.test(v);
  return c;
}

CoverPartition reverse_partition(const CoverPartition& c) {
  CoverPartition r;
  for (const Path& p : c.part1) r.part1.push_back(reversed(p));
  for (const Path& p : c.part2) r.part2.push_back(reversed(p));
  return r;
}

std::vector<Edge> reverse_edges(const std::vector<Edge>& f) {
  std::vector<Edge> r;
  for (const Edge& e : f) r.push_back({e.to, e.from});
  return r;
}

}  // namespace

ExtendResult extend_heads(const Digraph& d, const CoverPartition& cover, const VertexSet& i_set, const VertexSet& j_set,
                          const std::vector<Edge>& f, ExtendOptions opt) {
  int n = d.n();
  PathSystem ps = cover.all();
  if (!is_path_cover(d, ps)) throw PreconditionError("path cover", "input is not a path cover of the host");
  if (i_set.intersects(j_set)) throw PreconditionError("I, J disjoint", "I and J intersect");
  for (const Path& p : cover.part2)
    if (i_set.test(p.head()))
      throw PreconditionError("h(P2) n I = 0", "part2 path has head " + std::to_string(p.head()) + " in I");
  {
    auto es = edge_set(ps);
    for (const Edge& e : f)
      if (!es.count(e))
        throw PreconditionError("F in E(P)", "edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " not on the cover");
  }
  VertexSet vf = edge_vertices(n, f);
  VertexSet vp2 = covered(n, cover.part2);
  long long bound = 3LL * static_cast<long long>(i_set.count() + j_set.count()) + 2LL * static_cast<long long>(f.size());
  if (opt.strengthened) bound += static_cast<long long>(vp2.count());
  if (opt.enforce_degree_bound)
    for (Vertex v : members(i_set))
      if (d.out_degree(v) <= bound)
        throw PreconditionError(opt.strengthened ? "d+(v) > 3(|I|+|J|)+2|F|+|V(P2)|" : "d+(v) > 3(|I|+|J|)+2|F|",
                                "vertex " + std::to_string(v) + " has out-degree " + std::to_string(d.out_degree(v)) +
                                    " <= " + std::to_string(bound));

  VertexSet ij = i_set | j_set;
  VertexSet blocked_base = vf;
  if (opt.strengthened) blocked_base |= vp2;
  int r = static_cast<int>(cover.part1.size());
  ExtendResult res;
  res.head_trace.push_back(count_in(heads(ps), i_set));
  for (int step = 1; step <= r; ++step) {
    int bad = count_in(heads(ps), i_set);
    if (bad > r - step) {
      // the path whose head is the lowest-index vertex of I
      int pi = -1;
      for (std::size_t a = 0; a < ps.size(); ++a)
        if (i_set.test(ps[a].head()) && (pi < 0 || ps[a].head() < ps[pi].head())) pi = static_cast<int>(a);
      Vertex v = ps[pi].head();
      auto pos = positions(n, ps);
      VertexSet x(n);
      for (Vertex y : members(ij)) {
        x.set(y);
        const Path& p = ps[pos[y].path];
        if (pos[y].idx > 0) x.set(p.vertices[pos[y].idx - 1]);
        if (pos[y].idx + 1 < static_cast<int>(p.size())) x.set(p.vertices[pos[y].idx + 1]);
      }
      VertexSet cand = d.out(v) - x - blocked_base;
      auto wf = cand.find_first();
      if (wf == VertexSet::npos)
        throw StageError("extend", "no admissible out-neighbour for head " + std::to_string(v), {v});
      Vertex w = static_cast<Vertex>(wf);
      int qi = pos[w].path, wi = pos[w].idx;
      Path q = ps[qi];
      Path before(std::vector<Vertex>(q.vertices.begin(), q.vertices.begin() + wi));
      Path after(std::vector<Vertex>(q.vertices.begin() + wi + 1, q.vertices.end()));
      PathSystem next;
      for (std::size_t a = 0; a < ps.size(); ++a)
        if (static_cast<int>(a) != qi) next.push_back(ps[a]);
      if (!before.vertices.empty()) next.push_back(before);
      if (!after.vertices.empty()) next.push_back(after);
      bool placed = false;
      for (Path& p : next)
        if (p.head() == v) {
          p.vertices.push_back(w);
          placed = true;
          break;
        }
      if (!placed) throw StageError("extend", "lost the path ending at " + std::to_string(v));
      ps = std::move(next);
    }
    res.head_trace.push_back(count_in(heads(ps), i_set));
    if (opt.debug && res.head_trace.back() > r - step)
      throw StageError("extend", "head count bound violated at step " + std::to_string(step));
  }
  // keep untouched part2 paths first, in their original order
  std::stable_sort(ps.begin(), ps.end(), [&](const Path& a, const Path& b) {
    auto rank = [&](const Path& p) {
      auto it = std::find(cover.part2.begin(), cover.part2.end(), p);
      return it == cover.part2.end() ? cover.part2.size() : static_cast<std::size_t>(it - cover.part2.begin());
    };
    return rank(a) < rank(b);
  });
  res.cover = std::move(ps);
  return res;
}

ExtendResult extend_tails(const Digraph& d, const CoverPartition& cover, const VertexSet& i_set, const VertexSet& j_set,
                          const std::vector<Edge>& f, ExtendOptions opt) {
  Digraph rd = reversed(d);
  ExtendResult r = extend_heads(rd, reverse_partition(cover), i_set, j_set, reverse_edges(f), opt);
  for (Path& p : r.cover) p = reversed(p);
  return r;
}

int check_extend_heads(const Digraph& d, const CoverPartition& in, const VertexSet& i_set, const VertexSet& j_set,
                       const std::vector<Edge>& f, bool strengthened, const PathSystem& out) {
  if (!is_path_cover(d, out)) return 7;
  int n = d.n();
  PathSystem ps = in.all();
  VertexSet h_out = make_set(n, heads(out)), t_out = make_set(n, tails(out));
  VertexSet h_in = make_set(n, heads(ps)), t_in = make_set(n, tails(ps));
  VertexSet ij = i_set | j_set;
  if (h_out.intersects(i_set)) return 1;
  if ((h_out & j_set) != (h_in & j_set)) return 2;
  if ((t_out & ij) != (t_in & ij)) return 3;
  auto es = edge_set(out);
  for (const Edge& e : f)
    if (!es.count(e)) return 4;
  if (out.size() > ps.size() + in.part1.size()) return 5;
  std::size_t kept = 0;
  for (const Path& p : in.part2)
    if (std::find(out.begin(), out.end(), p) != out.end()) ++kept;
  if (strengthened ? kept != in.part2.size() : kept + in.part1.size() < in.part2.size()) return 6;
  return 0;
}

int check_extend_tails(const Digraph& d, const CoverPartition& in, const VertexSet& i_set, const VertexSet& j_set,
                       const std::vector<Edge>& f, bool strengthened, const PathSystem& out) {
  PathSystem rout;
  for (const Path& p : out) rout.push_back(reversed(p));
  return check_extend_heads(reversed(d), reverse_partition(in), i_set, j_set, reverse_edges(f), strengthened, rout);
}

}  // namespace tourney
