#include "cgd/spqr.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "cgd/error.hpp"
#include "cgd/union_find.hpp"

namespace cgd {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::S: return "S";
    case NodeKind::P: return "P";
    case NodeKind::Q: return "Q";
    case NodeKind::R: return "R";
  }
  return "?";
}

namespace {

// An edge of the working graph; id -1 marks the virtual edge to the parent.
struct WEdge {
  int a, b, id;
};

// Split classes w.r.t. {s,t}: edges glued at every vertex other than s,t.
std::vector<std::vector<int>> split_classes(const std::vector<WEdge>& es, int s, int t, int n) {
  UnionFind uf(static_cast<int>(es.size()));
  std::vector<int> first(n, -1);
  for (int i = 0; i < static_cast<int>(es.size()); ++i) {
    for (int x : {es[i].a, es[i].b}) {
      if (x == s || x == t) continue;
      if (first[x] == -1)
        first[x] = i;
      else
        uf.unite(first[x], i);
    }
  }
  std::map<int, int> slot;
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < static_cast<int>(es.size()); ++i) {
    int r = uf.find(i);
    auto [it, fresh] = slot.emplace(r, static_cast<int>(classes.size()));
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

class Builder {
 public:
  Builder(const Graph& g, SpqrTree& t) : g_(g), t_(t) {}

  int build(std::vector<int> edges, int u, int v, int parent) {
    std::sort(edges.begin(), edges.end());
    int id = static_cast<int>(t_.nodes.size());
    t_.nodes.emplace_back();
    {
      SpqrNode& nd = t_.nodes[id];
      nd.parent = parent;
      nd.u = u;
      nd.v = v;
      nd.pert = edges;
    }
    if (edges.size() == 1) {
      SpqrNode& nd = t_.nodes[id];
      nd.kind = NodeKind::Q;
      nd.edge = edges[0];
      nd.skeleton = {{u, v, kRealEdge}, {u, v, kParentEdge}};
      return id;
    }

    std::vector<WEdge> es;
    for (int e : edges) es.push_back({g_.edges[e].first, g_.edges[e].second, e});
    auto classes = split_classes(es, u, v, g_.n);
    if (classes.size() >= 2) {
      std::vector<SkeletonEdge> sk{{u, v, kParentEdge}};
      std::vector<int> kids;
      for (const auto& cls : classes) {
        std::vector<int> sub;
        for (int i : cls) sub.push_back(es[i].id);
        int c = build(sub, u, v, id);
        kids.push_back(c);
        sk.push_back({u, v, c});
      }
      SpqrNode& nd = t_.nodes[id];
      nd.kind = NodeKind::P;
      nd.children = kids;
      nd.skeleton = sk;
      return id;
    }

    if (auto cuts = series_cuts(es, u, v); !cuts.empty()) {
      build_series(id, es, u, v, cuts);
      return id;
    }
    build_rigid(id, es, u, v);
    return id;
  }

 private:
  const Graph& g_;
  SpqrTree& t_;

  std::vector<std::vector<int>> adjacency(const std::vector<WEdge>& es) const {
    std::vector<std::vector<int>> adj(g_.n);
    for (const auto& e : es) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    return adj;
  }

  // BFS from s avoiding `blocked`; returns parent array (-2 = unreached).
  static std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int s, int blocked) {
    std::vector<int> par(adj.size(), -2);
    std::queue<int> q;
    par[s] = -1;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x])
        if (y != blocked && par[y] == -2) {
          par[y] = x;
          q.push(y);
        }
    }
    return par;
  }

  // Cut vertices separating u from v, ordered from u to v.
  std::vector<int> series_cuts(const std::vector<WEdge>& es, int u, int v) const {
    auto adj = adjacency(es);
    auto par = bfs(adj, u, -1);
    std::vector<int> path;
    for (int x = v; x != -1; x = par[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    std::vector<int> cuts;
    for (size_t i = 1; i + 1 < path.size(); ++i) {
      auto p = bfs(adj, u, path[i]);
      if (p[v] == -2) cuts.push_back(path[i]);
    }
    return cuts;
  }

  void build_series(int id, const std::vector<WEdge>& es, int u, int v,
                    const std::vector<int>& cuts) {
    std::vector<int> chain{u};
    chain.insert(chain.end(), cuts.begin(), cuts.end());
    chain.push_back(v);
    std::vector<int> pos(g_.n, -1);
    for (int i = 0; i < static_cast<int>(chain.size()); ++i) pos[chain[i]] = i;

    // Glue edges at non-chain vertices; each piece then spans one link.
    UnionFind uf(static_cast<int>(es.size()));
    std::vector<int> first(g_.n, -1);
    for (int i = 0; i < static_cast<int>(es.size()); ++i)
      for (int x : {es[i].a, es[i].b}) {
        if (pos[x] != -1) continue;
        if (first[x] == -1)
          first[x] = i;
        else
          uf.unite(first[x], i);
      }
    std::map<int, int> low_of_root;
    for (int i = 0; i < static_cast<int>(es.size()); ++i)
      for (int x : {es[i].a, es[i].b})
        if (pos[x] != -1) {
          int r = uf.find(i);
          auto it = low_of_root.find(r);
          if (it == low_of_root.end() || pos[x] < it->second) low_of_root[r] = pos[x];
        }
    std::vector<std::vector<int>> link(chain.size() - 1);
    for (int i = 0; i < static_cast<int>(es.size()); ++i) link[low_of_root[uf.find(i)]].push_back(es[i].id);

    std::vector<SkeletonEdge> sk;
    std::vector<int> kids;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      if (link[i].empty())
        throw Error(ErrorKind::Inconsistent, "series decomposition left an empty link");
      int c = build(link[i], chain[i], chain[i + 1], id);
      kids.push_back(c);
      sk.push_back({chain[i], chain[i + 1], c});
    }
    sk.push_back({v, u, kParentEdge});
    SpqrNode& nd = t_.nodes[id];
    nd.kind = NodeKind::S;
    nd.children = kids;
    nd.skeleton = sk;
  }

  void build_rigid(int id, std::vector<WEdge> es, int u, int v) {
    std::vector<int> verts;
    for (const auto& e : es) {
      verts.push_back(e.a);
      verts.push_back(e.b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int real_edges = static_cast<int>(es.size());
    es.push_back({u, v, -1});

    struct Pair {
      int s, t;
      std::vector<std::vector<int>> inner;  // internal classes (indices into es)
      std::vector<std::vector<char>> inner_vertices;
    };
    std::vector<Pair> pairs;
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j) {
        int s = verts[i], t = verts[j];
        if (std::minmax(s, t) == std::minmax(u, v)) continue;
        auto classes = split_classes(es, s, t, g_.n);
        if (classes.size() < 2) continue;
        Pair p{s, t, {}, {}};
        for (auto& cls : classes) {
          bool has_virtual = std::any_of(cls.begin(), cls.end(),
                                         [&](int k) { return k == real_edges; });
          if (has_virtual) continue;
          std::vector<char> mark(g_.n, 0);
          for (int k : cls) mark[es[k].a] = mark[es[k].b] = 1;
          p.inner.push_back(cls);
          p.inner_vertices.push_back(mark);
        }
        pairs.push_back(std::move(p));
      }

    std::vector<SkeletonEdge> sk;
    std::vector<int> kids;
    std::vector<char> covered(real_edges, 0);
    for (size_t i = 0; i < pairs.size(); ++i) {
      bool maximal = true;
      for (size_t j = 0; j < pairs.size() && maximal; ++j) {
        if (i == j) continue;
        for (const auto& mark : pairs[j].inner_vertices)
          if (mark[pairs[i].s] && mark[pairs[i].t]) {
            maximal = false;
            break;
          }
      }
      if (!maximal) continue;
      std::vector<int> sub;
      for (const auto& cls : pairs[i].inner)
        for (int k : cls) {
          if (covered[k])
            throw Error(ErrorKind::Inconsistent, "rigid decomposition overlaps");
          covered[k] = 1;
          sub.push_back(es[k].id);
        }
      int c = build(sub, pairs[i].s, pairs[i].t, id);
      kids.push_back(c);
      sk.push_back({pairs[i].s, pairs[i].t, c});
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
      throw Error(ErrorKind::Inconsistent, "rigid decomposition misses an edge");
    sk.push_back({u, v, kParentEdge});
    SpqrNode& nd = t_.nodes[id];
    nd.kind = NodeKind::R;
    nd.children = kids;
    nd.skeleton = sk;
  }
};

}  // namespace

SpqrTree build_spqr(const Graph& g, int reference_edge) {
  if (reference_edge < 0 || reference_edge >= g.edge_count())
    throw Error(ErrorKind::EdgeNotPresent, "reference edge is not in the graph");
  if (!is_biconnected(g)) throw Error(ErrorKind::NotBiconnected, "graph is not biconnected");
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edges[e].first == g.edges[e].second)
      throw Error(ErrorKind::Inconsistent, "self-loop in SPQR input");

  SpqrTree t;
  t.graph = g;
  t.reference_edge = reference_edge;
  t.root = 0;
  auto [u, v] = g.edges[reference_edge];
  t.nodes.emplace_back();
  t.nodes[0].kind = NodeKind::Q;
  t.nodes[0].u = u;
  t.nodes[0].v = v;
  t.nodes[0].edge = reference_edge;
  t.nodes[0].skeleton = {{u, v, kRealEdge}};

  std::vector<int> rest;
  for (int e = 0; e < g.edge_count(); ++e)
    if (e != reference_edge) rest.push_back(e);
  if (!rest.empty()) {
    Builder b(g, t);
    int c = b.build(rest, u, v, 0);
    t.nodes[0].children = {c};
    t.nodes[0].skeleton.push_back({u, v, c});
  }
  std::vector<int> all(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) all[e] = e;
  t.nodes[0].pert = all;
  return t;
}

std::vector<int> pertinent(const SpqrTree& t, int node) { return t.nodes.at(node).pert; }

std::vector<int> pertinent_vertices(const SpqrTree& t, int node) {
  std::vector<int> vs;
  for (int e : t.nodes.at(node).pert) {
    vs.push_back(t.graph.edges[e].first);
    vs.push_back(t.graph.edges[e].second);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::vector<VisibleNode> visible_nodes(const SpqrTree& t, int node) {
  const auto& nd = t.nodes.at(node);
  if (nd.kind != NodeKind::P && nd.kind != NodeKind::R)
    throw Error(ErrorKind::WrongKind, "visible nodes are defined for P- and R-nodes only");
  std::vector<VisibleNode> out;
  for (const auto& se : nd.skeleton) {
    if (se.child < 0) continue;
    const auto& ch = t.nodes[se.child];
    if (ch.kind == NodeKind::S) {
      for (int g : ch.children) out.push_back({g, se.child});
    } else {
      out.push_back({se.child, -1});
    }
  }
  return out;
}

Graph skeleton_graph(const SpqrNode& n, std::vector<int>& local_to_global) {
  local_to_global.clear();
  std::map<int, int> local;
  auto id = [&](int x) {
    auto [it, fresh] = local.emplace(x, static_cast<int>(local_to_global.size()));
    if (fresh) local_to_global.push_back(x);
    return it->second;
  };
  std::vector<std::pair<int, int>> es;
  for (const auto& se : n.skeleton) {
    int a = id(se.u);
    int b = id(se.v);
    es.emplace_back(a, b);
  }
  Graph g(static_cast<int>(local_to_global.size()));
  for (auto [a, b] : es) g.add_edge(a, b);
  return g;
}

nlohmann::json spqr_to_json(const SpqrTree& t, const std::vector<std::string>& names) {
  using nlohmann::json;
  auto name = [&](int v) { return v < static_cast<int>(names.size()) ? names[v] : std::to_string(v); };
  json j;
  auto [ra, rb] = t.graph.edges[t.reference_edge];
  j["reference_edge"] = {name(ra), name(rb)};
  j["root"] = t.root;
  json nodes = json::array();
  for (int i = 0; i < t.size(); ++i) {
    const auto& nd = t.nodes[i];
    json jn;
    jn["id"] = i;
    jn["kind"] = to_string(nd.kind);
    jn["poles"] = {name(nd.u), name(nd.v)};
    jn["parent"] = nd.parent < 0 ? json() : json(nd.parent);
    jn["children"] = nd.children;
    json sk = json::array();
    for (const auto& se : nd.skeleton) {
      json je;
      je["ends"] = {name(se.u), name(se.v)};
      if (se.child == kParentEdge)
        je["child"] = "parent";
      else if (se.child == kRealEdge)
        je["child"] = "real";
      else
        je["child"] = se.child;
      sk.push_back(je);
    }
    jn["skeleton"] = sk;
    if (nd.kind == NodeKind::Q) {
      auto [a, b] = t.graph.edges[nd.edge];
      jn["edge"] = {name(a), name(b)};
    }
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  return j;
}

}  // namespace cgd
