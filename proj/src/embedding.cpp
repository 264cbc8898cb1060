#include "cgd/embedding.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "cgd/error.hpp"
#include "cgd/model.hpp"
#include "cgd/union_find.hpp"

namespace cgd {

int RotationSystem::next_in_face(int d) const {
  int t = twin(d);
  int v = tail(t);
  const auto& rot = rotation[v];
  auto it = std::find(rot.begin(), rot.end(), t);
  ++it;
  return it == rot.end() ? rot.front() : *it;
}

int RotationSystem::find_dart(int u, int v) const {
  for (int d : rotation[u])
    if (head(d) == v) return d;
  return -1;
}

RotationSystem RotationSystem::mirrored() const {
  RotationSystem m = *this;
  for (auto& rot : m.rotation) std::reverse(rot.begin(), rot.end());
  // Reversing every rotation reverses every face walk; the twin of an
  // outer dart runs along the mirrored outer face.
  for (auto& d : m.outer) d = twin(d);
  return m;
}

namespace {

// succ[d]: dart following d in the rotation at tail(d).
std::vector<int> rotation_successors(const RotationSystem& rs) {
  std::vector<int> succ(rs.dart_count(), -1);
  for (int v = 0; v < rs.n; ++v) {
    const auto& rot = rs.rotation[v];
    for (size_t i = 0; i < rot.size(); ++i) {
      int d = rot[i];
      if (d < 0 || d >= rs.dart_count() || rs.tail(d) != v || succ[d] != -1)
        throw Error(ErrorKind::Inconsistent, "malformed rotation at vertex " + std::to_string(v));
      succ[d] = rot[(i + 1) % rot.size()];
    }
  }
  for (int d = 0; d < rs.dart_count(); ++d)
    if (succ[d] == -1)
      throw Error(ErrorKind::Inconsistent, "dart " + std::to_string(d) + " missing from rotation");
  return succ;
}

// Face walks of the permutation d -> succ[twin(d)]; returns walk id per dart.
int face_walks(const std::vector<int>& succ, std::vector<int>& walk_of) {
  int darts = static_cast<int>(succ.size());
  walk_of.assign(darts, -1);
  int walks = 0;
  for (int d = 0; d < darts; ++d) {
    if (walk_of[d] != -1) continue;
    for (int x = d; walk_of[x] == -1; x = succ[twin(x)]) walk_of[x] = walks;
    ++walks;
  }
  return walks;
}

// Component label per vertex; only used for outer-face bookkeeping.
std::vector<int> vertex_components(const RotationSystem& rs, int& count) {
  Graph g(rs.n, rs.edges);
  std::vector<int> label;
  count = connected_components(g, label);
  return label;
}

}  // namespace

FaceSet faces(const RotationSystem& rs) {
  auto succ = rotation_successors(rs);
  std::vector<int> walk_of;
  int walks = face_walks(succ, walk_of);

  int comps = 0;
  auto comp = vertex_components(rs, comps);
  // Outer walk per component: the one holding the declared outer dart, else
  // the walk of the component's smallest dart.
  std::vector<int> outer_walk(comps, -1);
  for (int d : rs.outer) {
    if (d < 0 || d >= rs.dart_count())
      throw Error(ErrorKind::Inconsistent, "outer dart out of range");
    outer_walk[comp[rs.tail(d)]] = walk_of[d];
  }
  for (int d = 0; d < rs.dart_count(); ++d)
    if (outer_walk[comp[rs.tail(d)]] == -1) outer_walk[comp[rs.tail(d)]] = walk_of[d];

  std::vector<char> is_outer(walks, 0);
  for (int w : outer_walk)
    if (w != -1) is_outer[w] = 1;

  // Face ids follow the smallest dart of each walk; outer walks collapse into
  // the first of them.
  FaceSet fs;
  std::vector<int> face_of_walk(walks, -1);
  fs.face_of_dart.assign(rs.dart_count(), -1);
  for (int d = 0; d < rs.dart_count(); ++d) {
    int w = walk_of[d];
    if (face_of_walk[w] == -1) {
      if (is_outer[w] && fs.outer != -1) {
        face_of_walk[w] = fs.outer;
      } else {
        face_of_walk[w] = static_cast<int>(fs.faces.size());
        if (is_outer[w]) fs.outer = face_of_walk[w];
        fs.faces.emplace_back();
      }
      auto& face = fs.faces[face_of_walk[w]];
      for (int x = d;;) {
        face.push_back(x);
        fs.face_of_dart[x] = face_of_walk[w];
        x = succ[twin(x)];
        if (x == d) break;
      }
    }
  }
  if (fs.outer == -1) {
    // No edges at all: a single face containing every vertex.
    fs.outer = 0;
    fs.faces.emplace_back();
  }
  fs.incidence.assign(rs.n, {});
  for (int d = 0; d < rs.dart_count(); ++d) fs.incidence[rs.tail(d)].push_back(fs.face_of_dart[d]);
  for (int v = 0; v < rs.n; ++v) {
    auto& inc = fs.incidence[v];
    if (inc.empty()) inc.push_back(fs.outer);
    std::sort(inc.begin(), inc.end());
    inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
  }
  return fs;
}

std::vector<int> FaceSet::vertices_of(const RotationSystem& rs, int f) const {
  std::vector<int> vs;
  for (int d : faces[f]) vs.push_back(rs.tail(d));
  if (f == outer)
    for (int v = 0; v < rs.n; ++v)
      if (rs.rotation[v].empty()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool is_planar_rotation(const RotationSystem& rs) {
  std::vector<int> succ;
  try {
    succ = rotation_successors(rs);
  } catch (const Error&) {
    return false;
  }
  std::vector<int> walk_of;
  int walks = face_walks(succ, walk_of);
  int comps = 0;
  vertex_components(rs, comps);
  int isolated = 0;
  for (int v = 0; v < rs.n; ++v)
    if (rs.rotation[v].empty()) ++isolated;
  int edge_comps = comps - isolated;
  int e = static_cast<int>(rs.edges.size());
  int v = rs.n - isolated;
  // Each component with edges satisfies V - E + F = 2 exactly when the sum does,
  // since every component has genus >= 0.
  return v - e + walks == 2 * edge_comps;
}

RotationSystem with_outer_face(const RotationSystem& rs, int dart) {
  if (dart < 0 || dart >= rs.dart_count())
    throw Error(ErrorKind::Inconsistent, "dart out of range");
  RotationSystem out = rs;
  int comps = 0;
  auto comp = vertex_components(rs, comps);
  out.outer.erase(std::remove_if(out.outer.begin(), out.outer.end(),
                                 [&](int d) { return comp[rs.tail(d)] == comp[rs.tail(dart)]; }),
                  out.outer.end());
  out.outer.push_back(dart);
  std::sort(out.outer.begin(), out.outer.end(),
            [&](int a, int b) { return comp[rs.tail(a)] < comp[rs.tail(b)]; });
  return out;
}

RotationSystem planar_embed(const Graph& g) {
  using namespace boost;
  using BGraph = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                                property<edge_index_t, int>>;
  BGraph bg(g.n);
  for (int e = 0; e < g.edge_count(); ++e) add_edge(g.edges[e].first, g.edges[e].second, e, bg);

  using EdgeDesc = graph_traits<BGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> emb(g.n);
  bool planar = boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg,
                                             boyer_myrvold_params::embedding = &emb[0]);
  if (!planar) throw Error(ErrorKind::NonPlanar, "graph is not planar");

  RotationSystem rs;
  rs.n = g.n;
  rs.edges = g.edges;
  rs.rotation.assign(g.n, {});
  auto eidx = get(edge_index, bg);
  for (int v = 0; v < g.n; ++v) {
    for (const auto& ed : emb[v]) {
      int e = eidx[ed];
      rs.rotation[v].push_back(g.edges[e].first == v ? dart_of(e, 0) : dart_of(e, 1));
    }
    // Canonical start: rotate so the smallest dart comes first.
    auto& rot = rs.rotation[v];
    if (!rot.empty()) std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
  }
  // Outer face: the walk through dart 0 of each component's smallest edge.
  int comps = 0;
  auto comp = vertex_components(rs, comps);
  std::vector<char> seen(comps, 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    int c = comp[g.edges[e].first];
    if (!seen[c]) {
      seen[c] = 1;
      rs.outer.push_back(dart_of(e, 0));
    }
  }
  return rs;
}

bool is_planar(const Graph& g) {
  try {
    planar_embed(g);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonPlanar) return false;
    throw;
  }
}

EmbeddingEnumerator::EmbeddingEnumerator(const Graph& g, int cap) : g_(g) {
  if (g.n > cap)
    throw Error(ErrorKind::CapExceeded, "graph has " + std::to_string(g.n) +
                                            " vertices, enumeration cap is " + std::to_string(cap));
  if (!is_connected(g)) throw Error(ErrorKind::Inconsistent, "enumeration needs a connected graph");
  base_.assign(g.n, {});
  radix_.assign(g.n, 1);
  for (int v = 0; v < g.n; ++v) {
    for (const auto& inc : g.adj[v])
      base_[v].push_back(g.edges[inc.edge].first == v ? dart_of(inc.edge, 0) : dart_of(inc.edge, 1));
    std::sort(base_[v].begin(), base_[v].end());
    for (int k = 2; k < static_cast<int>(base_[v].size()); ++k) radix_[v] *= k;
    total_ *= radix_[v];
  }
}

std::optional<RotationSystem> EmbeddingEnumerator::candidate(std::uint64_t index) const {
  RotationSystem rs;
  rs.n = g_.n;
  rs.edges = g_.edges;
  rs.rotation.assign(g_.n, {});
  for (int v = 0; v < g_.n; ++v) {
    std::uint64_t digit = index % radix_[v];
    index /= radix_[v];
    // Lehmer decode of the tail after the fixed first dart.
    std::vector<int> pool(base_[v].begin() + (base_[v].empty() ? 0 : 1), base_[v].end());
    auto& rot = rs.rotation[v];
    if (!base_[v].empty()) rot.push_back(base_[v][0]);
    std::uint64_t fact = pool.empty() ? 1 : radix_[v] / std::max<std::uint64_t>(1, pool.size());
    while (!pool.empty()) {
      std::uint64_t pick = digit / fact;
      digit %= fact;
      rot.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<long>(pick));
      if (!pool.empty()) fact /= pool.size();
    }
  }
  if (!is_planar_rotation(rs)) return std::nullopt;
  if (!rs.edges.empty()) rs.outer.push_back(0);
  return rs;
}

namespace {

// Edge-insertion search: rotations of a DFS spanning tree, then each
// remaining edge placed into every pair of corners that share a face. Each
// planar rotation system is reached exactly once (its restriction to every
// prefix of the insertion order is unique) and non-planar states never arise.
class InsertionSearch {
 public:
  InsertionSearch(const Graph& g, const std::function<bool(const RotationSystem&)>& visit)
      : g_(g), visit_(visit), rot_(g.n) {
    std::vector<char> seen(g.n, 0), tree(g.edge_count(), 0);
    std::vector<int> st{0};
    seen[0] = 1;
    std::vector<size_t> pos(g.n, 0);
    while (!st.empty()) {
      int x = st.back();
      if (pos[x] == g.adj[x].size()) {
        st.pop_back();
        continue;
      }
      auto inc = g.adj[x][pos[x]++];
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = 1;
      tree[inc.edge] = 1;
      st.push_back(inc.neighbor);
    }
    tree_darts_.assign(g.n, {});
    for (int e = 0; e < g.edge_count(); ++e) {
      if (tree[e]) {
        tree_darts_[g.edges[e].first].push_back(dart_of(e, 0));
        tree_darts_[g.edges[e].second].push_back(dart_of(e, 1));
      } else {
        rest_.push_back(e);
      }
    }
  }

  void run() { tree_level(0); }

 private:
  const Graph& g_;
  const std::function<bool(const RotationSystem&)>& visit_;
  std::vector<std::vector<int>> rot_;
  std::vector<std::vector<int>> tree_darts_;
  std::vector<int> rest_;
  bool stop_ = false;

  int tail(int d) const { return d & 1 ? g_.edges[d >> 1].second : g_.edges[d >> 1].first; }

  void tree_level(int v) {
    if (stop_) return;
    if (v == g_.n) {
      insert_level(0);
      return;
    }
    auto darts = tree_darts_[v];
    if (darts.size() <= 2) {
      rot_[v] = darts;
      tree_level(v + 1);
      return;
    }
    std::sort(darts.begin() + 1, darts.end());
    do {
      rot_[v] = darts;
      tree_level(v + 1);
    } while (!stop_ && std::next_permutation(darts.begin() + 1, darts.end()));
  }

  void insert_level(size_t k) {
    if (stop_) return;
    if (k == rest_.size()) {
      RotationSystem rs;
      rs.n = g_.n;
      rs.edges = g_.edges;
      rs.rotation = rot_;
      if (!rs.edges.empty()) rs.outer = {0};
      if (!visit_(rs)) stop_ = true;
      return;
    }
    const int D = 2 * g_.edge_count();
    std::vector<int> succ(D, -1), face(D, -1);
    for (int v = 0; v < g_.n; ++v)
      for (size_t i = 0; i < rot_[v].size(); ++i) succ[rot_[v][i]] = rot_[v][(i + 1) % rot_[v].size()];
    int nf = 0;
    for (int d = 0; d < D; ++d) {
      if (succ[d] < 0 || face[d] >= 0) continue;
      for (int x = d; face[x] < 0; x = succ[x ^ 1]) face[x] = nf;
      ++nf;
    }
    const int e = rest_[k];
    const int x = g_.edges[e].first, y = g_.edges[e].second;
    auto rx = rot_[x], ry = rot_[y];
    for (size_t i = 0; i < rx.size(); ++i) {
      int fx = face[rx[(i + 1) % rx.size()]];
      for (size_t j = 0; j < ry.size(); ++j) {
        if (face[ry[(j + 1) % ry.size()]] != fx) continue;
        rot_[x] = rx;
        rot_[x].insert(rot_[x].begin() + i + 1, dart_of(e, 0));
        rot_[y] = ry;
        rot_[y].insert(rot_[y].begin() + j + 1, dart_of(e, 1));
        insert_level(k + 1);
        if (stop_) break;
      }
      if (stop_) break;
    }
    rot_[x] = rx;
    rot_[y] = ry;
  }
};

}  // namespace

void for_each_planar_rotation(const Graph& g, int cap,
                              const std::function<bool(const RotationSystem&)>& visit) {
  if (g.n > cap)
    throw Error(ErrorKind::CapExceeded, "graph has " + std::to_string(g.n) +
                                            " vertices, enumeration cap is " + std::to_string(cap));
  if (g.n == 0) return;
  if (!is_connected(g)) throw Error(ErrorKind::BadParameter, "enumeration needs a connected graph");
  InsertionSearch s(g, visit);
  s.run();
}

std::vector<RotationSystem> enumerate_rotation_systems(const Graph& g, int cap) {
  std::vector<RotationSystem> out;
  for_each_planar_rotation(g, cap, [&](const RotationSystem& rs) {
    out.push_back(rs);
    return true;
  });
  return out;
}

void enumerate_embeddings(const Graph& g, int cap,
                          const std::function<bool(const RotationSystem&)>& visit) {
  for_each_planar_rotation(g, cap, [&](const RotationSystem& rs) {
    if (rs.edges.empty()) return visit(rs);
    FaceSet fs = faces(rs);
    for (const auto& face : fs.faces) {
      RotationSystem with = rs;
      with.outer = {*std::min_element(face.begin(), face.end())};
      if (!visit(with)) return false;
    }
    return true;
  });
}

Graph dual_graph(const RotationSystem& rs, const FaceSet& fs) {
  Graph d(fs.count());
  for (int e = 0; e < static_cast<int>(rs.edges.size()); ++e)
    d.add_edge(fs.face_of_dart[dart_of(e, 0)], fs.face_of_dart[dart_of(e, 1)]);
  return d;
}

Graph dual_graph(const RotationSystem& rs) { return dual_graph(rs, faces(rs)); }

void require_same_graph(const RotationSystem& rs, const Graph& g) {
  if (rs.n != g.n || rs.edges.size() != g.edges.size())
    throw Error(ErrorKind::Inconsistent, "embedding does not match the graph");
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto a = std::minmax(rs.edges[e].first, rs.edges[e].second);
    auto b = std::minmax(g.edges[e].first, g.edges[e].second);
    if (a != b) throw Error(ErrorKind::Inconsistent, "embedding does not match the graph");
  }
  rotation_successors(rs);
}

bool cycle_encloses(const RotationSystem& rs, const FaceSet& fs, const std::vector<int>& cycle,
                    int v) {
  if (std::find(cycle.begin(), cycle.end(), v) != cycle.end()) return false;
  std::vector<char> on_cycle(rs.edges.size(), 0);
  for (size_t i = 0; i < cycle.size(); ++i) {
    int d = rs.find_dart(cycle[i], cycle[(i + 1) % cycle.size()]);
    if (d < 0) throw Error(ErrorKind::Inconsistent, "cycle uses a missing edge");
    on_cycle[edge_of(d)] = 1;
  }
  UnionFind uf(fs.count());
  for (size_t e = 0; e < rs.edges.size(); ++e)
    if (!on_cycle[e]) uf.unite(fs.face_of_dart[dart_of(static_cast<int>(e), 0)],
                               fs.face_of_dart[dart_of(static_cast<int>(e), 1)]);
  return uf.find(fs.incidence[v].front()) != uf.find(fs.outer);
}

namespace {

// Fundamental cycles of an edge set (every block of a face boundary without
// bridges is a cycle, so these are exactly its block cycles).
std::vector<std::vector<int>> fundamental_cycles(int n, const std::vector<std::pair<int, int>>& es) {
  Graph s(n, es);
  std::vector<int> parent(n, -1), depth(n, -1), parent_edge(n, -1);
  std::vector<std::vector<int>> cycles;
  std::vector<char> tree_edge(es.size(), 0);
  for (int r = 0; r < n; ++r) {
    if (depth[r] != -1 || s.adj[r].empty()) continue;
    depth[r] = 0;
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [y, e] : s.adj[x]) {
        if (depth[y] != -1) continue;
        depth[y] = depth[x] + 1;
        parent[y] = x;
        parent_edge[y] = e;
        tree_edge[e] = 1;
        stack.push_back(y);
      }
    }
  }
  for (size_t e = 0; e < es.size(); ++e) {
    if (tree_edge[e]) continue;
    int a = es[e].first, b = es[e].second;
    std::vector<int> left, right;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        left.push_back(a);
        a = parent[a];
      } else {
        right.push_back(b);
        b = parent[b];
      }
    }
    left.push_back(a);
    left.insert(left.end(), right.rbegin(), right.rend());
    cycles.push_back(left);
  }
  return cycles;
}

// Exhaustive simple-cycle search inside the cluster, for the rare case where
// the boundary cycles do not already yield a witness.
std::optional<std::vector<int>> search_enclosing_cycle(const RotationSystem& rs, const FaceSet& fs,
                                                       const std::vector<char>& in, int v) {
  Graph g(rs.n, rs.edges);
  std::vector<int> path;
  std::vector<char> used(rs.n, 0);
  std::optional<std::vector<int>> found;
  std::function<void(int, int)> dfs = [&](int start, int x) {
    for (auto [y, e] : g.adj[x]) {
      if (found || !in[y] || y < start) continue;
      if (y == start && path.size() >= 3) {
        if (cycle_encloses(rs, fs, path, v)) found = path;
        continue;
      }
      if (used[y]) continue;
      used[y] = 1;
      path.push_back(y);
      dfs(start, y);
      path.pop_back();
      used[y] = 0;
    }
  };
  for (int s = 0; s < rs.n && !found; ++s) {
    if (!in[s]) continue;
    used[s] = 1;
    path = {s};
    dfs(s, s);
    used[s] = 0;
  }
  return found;
}

}  // namespace

std::optional<EnclosureWitness> enclosed_violation(const RotationSystem& rs,
                                                   const ClusteredGraph& cg, int cluster) {
  require_same_graph(rs, cg.graph());
  if (cluster < 0 || cluster >= cg.cluster_count())
    throw Error(ErrorKind::UnknownIdentifier, "unknown cluster index " + std::to_string(cluster));
  auto in = cg.cluster_mask(cluster);
  FaceSet fs = faces(rs);
  // Faces of G glued across everything that is not an edge of G[mu] are the
  // faces of the inherited embedding of G[mu].
  UnionFind uf(fs.count());
  for (size_t e = 0; e < rs.edges.size(); ++e) {
    auto [a, b] = rs.edges[e];
    if (!(in[a] && in[b]))
      uf.unite(fs.face_of_dart[dart_of(static_cast<int>(e), 0)],
               fs.face_of_dart[dart_of(static_cast<int>(e), 1)]);
  }
  int outer = uf.find(fs.outer);
  int enclosed = -1;
  for (int v = 0; v < rs.n && enclosed < 0; ++v)
    if (!in[v] && uf.find(fs.incidence[v].front()) != outer) enclosed = v;
  if (enclosed < 0) return std::nullopt;

  int region = uf.find(fs.incidence[enclosed].front());
  std::vector<std::pair<int, int>> boundary;
  for (size_t e = 0; e < rs.edges.size(); ++e) {
    int f0 = uf.find(fs.face_of_dart[dart_of(static_cast<int>(e), 0)]);
    int f1 = uf.find(fs.face_of_dart[dart_of(static_cast<int>(e), 1)]);
    if (f0 != f1 && (f0 == region || f1 == region)) boundary.push_back(rs.edges[e]);
  }
  EnclosureWitness w;
  w.vertex = enclosed;
  for (auto& cyc : fundamental_cycles(rs.n, boundary)) {
    if (cycle_encloses(rs, fs, cyc, enclosed)) {
      w.cycle = cyc;
      return w;
    }
  }
  if (auto cyc = search_enclosing_cycle(rs, fs, in, enclosed)) {
    w.cycle = *cyc;
    return w;
  }
  throw Error(ErrorKind::Inconsistent, "enclosed vertex without a separating cycle");
}

nlohmann::json embedding_to_json(const RotationSystem& rs, const std::vector<std::string>& names) {
  nlohmann::json rot = nlohmann::json::object();
  for (int v = 0; v < rs.n; ++v) {
    nlohmann::json order = nlohmann::json::array();
    for (int d : rs.rotation[v]) order.push_back(names[rs.head(d)]);
    rot[names[v]] = order;
  }
  nlohmann::json outer = nlohmann::json::array();
  FaceSet fs = faces(rs);
  // Canonical dart per outer walk: smallest (tail, head) by vertex index.
  for (int d0 : rs.outer) {
    int best = d0;
    for (int x = d0;;) {
      auto key = [&](int d) { return std::make_pair(rs.tail(d), rs.head(d)); };
      if (key(x) < key(best)) best = x;
      x = rs.next_in_face(x);
      if (x == d0) break;
    }
    outer.push_back({names[rs.tail(best)], names[rs.head(best)]});
  }
  nlohmann::json j;
  j["rotation"] = rot;
  j["outer_face"] = outer.empty() ? nlohmann::json() : outer[0];
  if (outer.size() > 1) j["component_outer_faces"] = outer;
  j["face_count"] = fs.count();
  return j;
}

RotationSystem embedding_from_json(const nlohmann::json& j, const Graph& g,
                                   const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  auto lookup = [&](const nlohmann::json& s) {
    auto it = index.find(s.get<std::string>());
    if (it == index.end())
      throw Error(ErrorKind::UnknownIdentifier, "unknown vertex '" + s.get<std::string>() + "'");
    return it->second;
  };
  RotationSystem rs;
  rs.n = g.n;
  rs.edges = g.edges;
  rs.rotation.assign(g.n, {});
  if (!j.contains("rotation")) throw Error(ErrorKind::Syntax, "embedding JSON lacks 'rotation'");
  for (auto& [name, order] : j["rotation"].items()) {
    int v = lookup(nlohmann::json(name));
    for (const auto& w : order) {
      int d = -1;
      int u = lookup(w);
      int e = g.find_edge(v, u);
      if (e >= 0) d = g.edges[e].first == v ? dart_of(e, 0) : dart_of(e, 1);
      if (d < 0) throw Error(ErrorKind::Inconsistent, "rotation names a non-edge " + name);
      rs.rotation[v].push_back(d);
    }
  }
  auto add_outer = [&](const nlohmann::json& pair) {
    int a = lookup(pair.at(0)), b = lookup(pair.at(1));
    int e = g.find_edge(a, b);
    if (e < 0) throw Error(ErrorKind::Inconsistent, "outer face dart is not an edge");
    rs.outer.push_back(g.edges[e].first == a ? dart_of(e, 0) : dart_of(e, 1));
  };
  if (j.contains("component_outer_faces")) {
    for (const auto& p : j["component_outer_faces"]) add_outer(p);
  } else if (j.contains("outer_face") && !j["outer_face"].is_null()) {
    add_outer(j["outer_face"]);
  }
  require_same_graph(rs, g);
  if (!is_planar_rotation(rs)) throw Error(ErrorKind::NonPlanar, "rotation system is not planar");
  return rs;
}

}  // namespace cgd
