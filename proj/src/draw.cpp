#include "cgd/draw.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Sparse>
#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "cgd/error.hpp"
#include "cgd/union_find.hpp"

namespace cgd {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint>;
using BMulti = bg::model::multi_polygon<BPolygon>;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Degenerate {};

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Sign with a tolerance scaled to the operands; 0 means "too close to call".
int side(Point o, Point a, Point b) {
  double c = cross(o, a, b);
  double s = std::max({std::abs(a.x - o.x), std::abs(a.y - o.y), std::abs(b.x - o.x),
                       std::abs(b.y - o.y), 1e-300});
  if (std::abs(c) <= 1e-11 * s * s) return 0;
  return c > 0 ? 1 : -1;
}

// 1 for a proper crossing, 0 for disjoint segments; throws Degenerate for
// any touching, overlap or passage through an endpoint.
int segments_cross(Point p1, Point p2, Point q1, Point q2) {
  int a = side(p1, p2, q1), b = side(p1, p2, q2);
  int c = side(q1, q2, p1), d = side(q1, q2, p2);
  if (a * b > 0 || c * d > 0) return 0;
  if (a && b && c && d) return 1;
  // Some orientation vanished: check the bounding boxes before declaring a
  // touch, so far-apart collinear pieces stay legal.
  auto within = [](double v, double lo, double hi) {
    return v >= std::min(lo, hi) - 1e-12 && v <= std::max(lo, hi) + 1e-12;
  };
  bool overlap_x = within(q1.x, p1.x, p2.x) || within(q2.x, p1.x, p2.x) ||
                   within(p1.x, q1.x, q2.x);
  bool overlap_y = within(q1.y, p1.y, p2.y) || within(q2.y, p1.y, p2.y) ||
                   within(p1.y, q1.y, q2.y);
  if (!overlap_x || !overlap_y) return 0;
  throw Degenerate{};
}

// Edges sharing exactly one endpoint: only a collinear overlap is illegal.
void check_shared(Point s, Point a, Point b) {
  if (side(s, a, b) != 0) return;
  if ((a.x - s.x) * (b.x - s.x) + (a.y - s.y) * (b.y - s.y) > 0) throw Degenerate{};
}

BPolygon to_polygon(const std::vector<Point>& pts) {
  BPolygon poly;
  for (auto p : pts) bg::append(poly.outer(), BPoint(p.x, p.y));
  if (!pts.empty()) bg::append(poly.outer(), BPoint(pts[0].x, pts[0].y));
  bg::correct(poly);
  return poly;
}

bool nested(const std::vector<int>& parent, int a, int b) {
  for (int x = b; x >= 0; x = parent[x])
    if (x == a) return true;
  for (int x = a; x >= 0; x = parent[x])
    if (x == b) return true;
  return false;
}

CrossingReport count_once(const GeometricDrawing& d) {
  CrossingReport r;
  const auto& P = d.vertices;
  const int m = static_cast<int>(d.edges.size());
  const int k = static_cast<int>(d.regions.size());

  for (int i = 0; i < m; ++i) {
    auto [a, b] = d.edges[i];
    // An edge running through a vertex is a touch as well.
    for (int v = 0; v < static_cast<int>(P.size()); ++v) {
      if (v == a || v == b) continue;
      if (side(P[a], P[b], P[v]) == 0 &&
          (P[v].x - P[a].x) * (P[v].x - P[b].x) + (P[v].y - P[a].y) * (P[v].y - P[b].y) <= 0)
        throw Degenerate{};
    }
    for (int j = i + 1; j < m; ++j) {
      auto [c, e] = d.edges[j];
      int shared = (a == c) + (a == e) + (b == c) + (b == e);
      if (shared == 2) throw Degenerate{};
      if (shared == 1) {
        int s = (a == c || a == e) ? a : b;
        int x = s == a ? b : a, y = (c == s) ? e : c;
        check_shared(P[s], P[x], P[y]);
        continue;
      }
      if (segments_cross(P[a], P[b], P[c], P[e])) {
        ++r.alpha;
        r.detail.push_back({"ee", i, j, 1});
      }
    }
  }

  for (int mu = 0; mu < k; ++mu) {
    const auto& R = d.regions[mu];
    if (R.size() < 3) continue;
    for (int v = 0; v < static_cast<int>(P.size()); ++v)
      for (size_t s = 0; s < R.size(); ++s)
        if (side(R[s], R[(s + 1) % R.size()], P[v]) == 0) {
          Point p = R[s], q = R[(s + 1) % R.size()];
          if ((P[v].x - p.x) * (P[v].x - q.x) + (P[v].y - p.y) * (P[v].y - q.y) <= 0)
            throw Degenerate{};
        }
    for (int i = 0; i < m; ++i) {
      auto [a, b] = d.edges[i];
      long long hits = 0;
      for (size_t s = 0; s < R.size(); ++s)
        hits += segments_cross(P[a], P[b], R[s], R[(s + 1) % R.size()]);
      if (hits / 2 > 0) {
        r.beta += hits / 2;
        r.detail.push_back({"er", i, mu, hits / 2});
      }
    }
  }

  for (int mu = 0; mu < k; ++mu) {
    if (d.regions[mu].size() < 3) continue;
    for (int nu = mu + 1; nu < k; ++nu) {
      if (d.regions[nu].size() < 3 || nested(d.region_parent, mu, nu)) continue;
      const auto& A = d.regions[mu];
      const auto& B = d.regions[nu];
      bool touch = false;
      for (size_t s = 0; s < A.size(); ++s)
        for (size_t t = 0; t < B.size(); ++t)
          touch |= segments_cross(A[s], A[(s + 1) % A.size()], B[t], B[(t + 1) % B.size()]) > 0;
      if (!touch) continue;  // disjoint or contained: one piece at most
      BMulti diff;
      bg::difference(to_polygon(A), to_polygon(B), diff);
      long long c = std::max<long long>(0, static_cast<long long>(diff.size()) - 1);
      if (c > 0) {
        r.gamma += c;
        r.detail.push_back({"rr", mu, nu, c});
      }
    }
  }
  return r;
}

}  // namespace

GeometricDrawing drawing_skeleton(const ClusteredGraph& cg) {
  GeometricDrawing d;
  d.vertices.assign(cg.vertex_count(), {});
  d.edges = cg.edges();
  d.regions.assign(cg.cluster_count(), {});
  d.region_parent.resize(cg.cluster_count());
  for (int c = 0; c < cg.cluster_count(); ++c) d.region_parent[c] = cg.cluster_parent(c);
  return d;
}

CrossingReport count_crossings_geometric(const GeometricDrawing& d) {
  GeometricDrawing cur = d;
  double scale = 1;
  for (auto p : d.vertices) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return count_once(cur);
    } catch (const Degenerate&) {
    }
    // Every point moves on its own; a shared offset would keep the touch.
    const double eps = scale * 1e-7 * (attempt + 1);
    cur = d;
    for (auto& p : cur.vertices) p = {p.x + eps * unit(rng), p.y + eps * unit(rng)};
    for (auto& R : cur.regions)
      for (auto& p : R) p = {p.x + eps * unit(rng), p.y + eps * unit(rng)};
  }
  throw Error(ErrorKind::DegeneratePosition, "drawing stays degenerate after perturbation");
}

std::vector<int> cluster_order(const ClusteredGraph& cg) {
  std::vector<std::vector<int>> direct(cg.cluster_count());
  for (int v = 0; v < cg.vertex_count(); ++v) direct[cg.membership(v)].push_back(v);
  std::vector<int> order;
  std::function<void(int)> walk = [&](int c) {
    for (int v : direct[c]) order.push_back(v);
    for (int ch : cg.cluster_children(c)) walk(ch);
  };
  walk(ClusteredGraph::kRoot);
  return order;
}

std::pair<GeometricDrawing, CrossingReport> construct_a00(const ClusteredGraph& cg) {
  GeometricDrawing d = drawing_skeleton(cg);
  const int n = cg.vertex_count();
  const double R = std::max(1, n);
  auto order = cluster_order(cg);
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / std::max(1, n);
    d.vertices[order[i]] = {R * std::cos(t), R * std::sin(t)};
  }
  // Smallest distance between a point and a chord spanning its neighbours.
  double gap = n >= 3 ? 2 * R * std::pow(std::sin(kPi / n), 2) : 1.0;
  int max_depth = 0;
  for (int c = 0; c < cg.cluster_count(); ++c) max_depth = std::max(max_depth, cg.depth(c));
  for (int c = 1; c < cg.cluster_count(); ++c) {
    double delta = 0.25 * gap * (max_depth - cg.depth(c) + 1) / (max_depth + 1);
    bg::model::multi_point<BPoint> pts;
    for (int v : cg.cluster_vertices(c))
      for (int k = 0; k < 8; ++k) {
        double t = 2 * kPi * k / 8 + kPi / 8;
        bg::append(pts, BPoint(d.vertices[v].x + delta * std::cos(t),
                               d.vertices[v].y + delta * std::sin(t)));
      }
    BPolygon hull;
    bg::convex_hull(pts, hull);
    const auto& ring = hull.outer();
    for (size_t i = 0; i + 1 < ring.size(); ++i) d.regions[c].push_back({ring[i].x(), ring[i].y()});
  }
  CrossingReport rep = count_crossings_geometric(d);
  return {d, rep};
}

ClusterSpanningTree cluster_spanning_tree(const ClusteredGraph& cg, TreeMode mode) {
  if (mode == TreeMode::CConnected && !is_c_connected(cg))
    throw Error(ErrorKind::NotCConnected, "c-connected spanning tree requested for a graph that is not c-connected");
  ClusterSpanningTree t;
  UnionFind uf(cg.vertex_count());
  std::function<void(int)> build = [&](int c) {
    for (int ch : cg.cluster_children(c)) build(ch);
    auto sub = cluster_subgraph(cg, c);
    for (int e : sub.edge_ids) {
      auto [a, b] = cg.edges()[e];
      if (uf.unite(a, b)) t.edges.push_back({a, b, e});
    }
    // Components left over, each named by its smallest vertex.
    std::vector<int> reps;
    std::set<int> seen;
    for (int v : sub.vertices)
      if (seen.insert(uf.find(v)).second) reps.push_back(v);
    if (reps.size() > 1 && mode == TreeMode::CConnected)
      throw Error(ErrorKind::NotCConnected, "cluster '" + cg.cluster_names()[c] + "' is not connected");
    for (size_t i = 1; i < reps.size(); ++i) {
      uf.unite(reps[0], reps[i]);
      t.edges.push_back({reps[0], reps[i], -1});
    }
  };
  build(ClusteredGraph::kRoot);
  t.cluster_edges.assign(cg.cluster_count(), {});
  for (int c = 0; c < cg.cluster_count(); ++c) {
    auto mask = cg.cluster_mask(c);
    for (int i = 0; i < static_cast<int>(t.edges.size()); ++i)
      if (mask[t.edges[i].u] && mask[t.edges[i].v]) t.cluster_edges[c].push_back(i);
  }
  return t;
}

namespace {

// Working copy of the embedding that grows as auxiliary edges are routed.
// Crossed edges get subdivided; every piece remembers its graph edge.
class Planarizer {
 public:
  Planarizer(const RotationSystem& rs, const std::vector<char>& tree_edge) : rs_(rs) {
    label_.resize(rs.edges.size());
    std::iota(label_.begin(), label_.end(), 0);
    blocked_ = tree_edge;
  }

  std::vector<int> route(int u, int w) {
    FaceSet fs = faces(rs_);
    const int F = fs.count();
    std::vector<int> dist(F, -1), via(F, -1);
    std::queue<int> q;
    for (int f : fs.incidence[u]) {
      dist[f] = 0;
      q.push(f);
    }
    int goal = -1;
    while (!q.empty() && goal < 0) {
      int f = q.front();
      q.pop();
      if (std::binary_search(fs.incidence[w].begin(), fs.incidence[w].end(), f)) {
        goal = f;
        break;
      }
      for (int d : fs.faces[f]) {
        if (blocked_[edge_of(d)]) continue;
        int g = fs.face_of_dart[twin(d)];
        if (dist[g] >= 0) continue;
        dist[g] = dist[f] + 1;
        via[g] = d;
        q.push(g);
      }
    }
    if (goal < 0) throw Error(ErrorKind::Inconsistent, "no dual route between tree endpoints");
    std::vector<int> darts;  // crossed darts, from u's side
    for (int f = goal; via[f] >= 0; f = fs.face_of_dart[via[f]]) darts.push_back(via[f]);
    std::reverse(darts.begin(), darts.end());

    std::vector<int> crossed;
    std::vector<int> stops{u};
    for (int d : darts) {
      crossed.push_back(label_[edge_of(d)]);
      stops.push_back(subdivide(d));
    }
    stops.push_back(w);

    // Corners for every chord first; the chords live in distinct faces, so
    // inserting one never invalidates the others.
    fs = faces(rs_);
    std::set<int> old_outer;
    for (int d : fs.faces[fs.outer]) old_outer.insert(d);
    std::vector<std::array<int, 3>> chords;  // p, q, face
    for (size_t i = 0; i + 1 < stops.size(); ++i) {
      int p = stops[i], r = stops[i + 1];
      std::vector<int> common;
      std::set_intersection(fs.incidence[p].begin(), fs.incidence[p].end(),
                            fs.incidence[r].begin(), fs.incidence[r].end(),
                            std::back_inserter(common));
      if (common.empty()) throw Error(ErrorKind::Inconsistent, "route stops share no face");
      chords.push_back({p, r, common[0]});
    }
    std::vector<std::pair<int, int>> slots;
    for (auto [p, r, f] : chords) slots.push_back({corner(fs, p, f), corner(fs, r, f)});
    for (size_t i = 0; i < chords.size(); ++i) {
      auto [p, r, f] = chords[i];
      int e = static_cast<int>(rs_.edges.size());
      rs_.edges.push_back({p, r});
      label_.push_back(-1);
      blocked_.push_back(1);
      insert_before(p, slots[i].first, dart_of(e, 0));
      insert_before(r, slots[i].second, dart_of(e, 1));
    }
    refresh_outer(old_outer);
    if (!is_planar_rotation(rs_)) throw Error(ErrorKind::Inconsistent, "routing broke planarity");
    return crossed;
  }

 private:
  // Outgoing dart of v on face f, or -1 when v has no darts yet.
  int corner(const FaceSet& fs, int v, int f) const {
    for (int d : rs_.rotation[v])
      if (fs.face_of_dart[d] == f) return d;
    return -1;
  }

  void insert_before(int v, int at, int d) {
    auto& rot = rs_.rotation[v];
    if (at < 0) {
      rot.push_back(d);
      return;
    }
    rot.insert(std::find(rot.begin(), rot.end(), at), d);
  }

  // Splits the edge of dart d (tail s, head t) with a new vertex m and
  // returns m. Around m: m->s, slot on d's face, m->t, slot on the other.
  int subdivide(int d) {
    int x = edge_of(d);
    auto [a, b] = rs_.edges[x];
    int m = rs_.n++;
    rs_.rotation.emplace_back();
    int y = static_cast<int>(rs_.edges.size());
    rs_.edges[x] = {a, m};
    rs_.edges.push_back({m, b});
    label_.push_back(label_[x]);
    blocked_.push_back(blocked_[x]);
    auto& rb = rs_.rotation[b];
    *std::find(rb.begin(), rb.end(), dart_of(x, 1)) = dart_of(y, 1);
    int to_a = dart_of(x, 1), to_b = dart_of(y, 0);
    bool forward = (d & 1) == 0;
    rs_.rotation[m] = forward ? std::vector<int>{to_a, to_b} : std::vector<int>{to_b, to_a};
    return m;
  }

  void refresh_outer(const std::set<int>& old_outer) {
    Graph g(rs_.n, rs_.edges);
    std::vector<int> comp;
    int k = connected_components(g, comp);
    std::vector<int> pick(k, -1);
    for (int d : old_outer) {
      int c = comp[rs_.tail(d)];
      if (pick[c] < 0) pick[c] = d;
    }
    rs_.outer.clear();
    for (int c = 0; c < k; ++c)
      if (pick[c] >= 0) rs_.outer.push_back(pick[c]);
      else {
        // A component made only of fresh chords: any of its darts.
        for (int d = 0; d < rs_.dart_count(); ++d)
          if (comp[rs_.tail(d)] == c) {
            rs_.outer.push_back(d);
            break;
          }
      }
  }

  RotationSystem rs_;
  std::vector<int> label_;
  std::vector<char> blocked_;
};

}  // namespace

std::map<std::pair<int, int>, long long> beta_ledger(const ClusteredGraph& cg,
                                                     const ClusterSpanningTree& tree,
                                                     const std::vector<AuxRoute>& routes) {
  std::map<std::pair<int, int>, long long> ledger;
  std::vector<char> in_tree(cg.edge_count(), 0);
  for (const auto& te : tree.edges)
    if (te.in_graph()) in_tree[te.edge] = 1;
  for (int e = 0; e < cg.edge_count(); ++e) {
    if (in_tree[e]) continue;
    auto [a, b] = cg.edges()[e];
    for (int c = 1; c < cg.cluster_count(); ++c)
      if (cg.contains(c, a) && cg.contains(c, b)) ++ledger[{e, c}];
  }
  for (const auto& r : routes) {
    const auto& te = tree.edges[r.tree_edge];
    for (int c = 1; c < cg.cluster_count(); ++c) {
      if (!cg.contains(c, te.u) || !cg.contains(c, te.v)) continue;
      for (int e : r.crossed) ++ledger[{e, c}];
    }
  }
  return ledger;
}

BetaPlan construct_0b0(const ClusteredGraph& cg) {
  if (!is_planar(cg.graph())) throw Error(ErrorKind::NonPlanar, "underlying graph is not planar");
  return construct_0b0(cg, planar_embed(cg.graph()));
}

BetaPlan construct_0b0(const ClusteredGraph& cg, const RotationSystem& rs) {
  require_same_graph(rs, cg.graph());
  if (!is_planar_rotation(rs)) throw Error(ErrorKind::NonPlanar, "embedding is not planar");
  BetaPlan p;
  p.c_connected = is_c_connected(cg);
  p.embedding = rs;
  p.tree = cluster_spanning_tree(cg, p.c_connected ? TreeMode::CConnected : TreeMode::General);
  std::vector<char> tree_edge(cg.edge_count(), 0);
  for (const auto& te : p.tree.edges)
    if (te.in_graph()) tree_edge[te.edge] = 1;
  Planarizer pl(p.embedding, tree_edge);
  for (int i = 0; i < static_cast<int>(p.tree.edges.size()); ++i) {
    const auto& te = p.tree.edges[i];
    if (te.in_graph()) continue;
    // Edges owned by the root shape no region, so they are never drawn.
    bool drawn = false;
    for (int c = 1; c < cg.cluster_count(); ++c)
      drawn |= cg.contains(c, te.u) && cg.contains(c, te.v);
    if (!drawn) continue;
    p.routes.push_back({i, pl.route(te.u, te.v)});
  }
  p.ledger = beta_ledger(cg, p.tree, p.routes);
  for (auto& [k, v] : p.ledger) p.beta += v;
  return p;
}

CrossingReport report_of(const BetaPlan& p) {
  CrossingReport r;
  r.beta = p.beta;
  for (auto& [k, v] : p.ledger)
    if (v > 0) r.detail.push_back({"er", k.first, k.second, v});
  return r;
}

namespace {

nlohmann::json edge_json(const ClusteredGraph& cg, int e) {
  return {cg.vertex_names()[cg.edges()[e].first], cg.vertex_names()[cg.edges()[e].second]};
}

int edge_from_json(const ClusteredGraph& cg, const nlohmann::json& j) {
  auto a = cg.find_vertex(j.at(0).get<std::string>());
  auto b = cg.find_vertex(j.at(1).get<std::string>());
  if (!a || !b) throw Error(ErrorKind::UnknownIdentifier, "unknown vertex in " + j.dump());
  int e = cg.find_edge(*a, *b);
  if (e < 0) throw Error(ErrorKind::EdgeNotPresent, "no edge " + j.dump());
  return e;
}

int vertex_from_json(const ClusteredGraph& cg, const nlohmann::json& j) {
  auto v = cg.find_vertex(j.get<std::string>());
  if (!v) throw Error(ErrorKind::UnknownIdentifier, "unknown vertex " + j.dump());
  return *v;
}

int cluster_from_json(const ClusteredGraph& cg, const nlohmann::json& j) {
  auto c = cg.find_cluster(j.get<std::string>());
  if (!c) throw Error(ErrorKind::UnknownIdentifier, "unknown cluster " + j.dump());
  return *c;
}

}  // namespace

nlohmann::json to_json(const CrossingReport& r, const ClusteredGraph& cg) {
  nlohmann::json j;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["gamma"] = r.gamma;
  j["detail"] = nlohmann::json::array();
  for (const auto& it : r.detail) {
    nlohmann::json x;
    x["kind"] = it.kind;
    if (it.kind == "ee") {
      x["edges"] = {edge_json(cg, it.a), edge_json(cg, it.b)};
    } else if (it.kind == "er") {
      x["edge"] = edge_json(cg, it.a);
      x["cluster"] = cg.cluster_names()[it.b];
    } else {
      x["clusters"] = {cg.cluster_names()[it.a], cg.cluster_names()[it.b]};
    }
    x["count"] = it.count;
    j["detail"].push_back(x);
  }
  return j;
}

nlohmann::json to_json(const GeometricDrawing& d, const CrossingReport& r, const ClusteredGraph& cg) {
  nlohmann::json j;
  j["mode"] = "ee";
  j["instance"] = serialize(cg);
  j["vertices"] = nlohmann::json::object();
  for (int v = 0; v < cg.vertex_count(); ++v)
    j["vertices"][cg.vertex_names()[v]] = {d.vertices[v].x, d.vertices[v].y};
  j["regions"] = nlohmann::json::object();
  for (int c = 1; c < cg.cluster_count(); ++c) {
    nlohmann::json poly = nlohmann::json::array();
    for (auto p : d.regions[c]) poly.push_back({p.x, p.y});
    j["regions"][cg.cluster_names()[c]] = poly;
  }
  j["report"] = to_json(r, cg);
  return j;
}

GeometricDrawing drawing_from_json(const nlohmann::json& j, const ClusteredGraph& cg) {
  GeometricDrawing d = drawing_skeleton(cg);
  for (auto& [name, xy] : j.at("vertices").items())
    d.vertices[vertex_from_json(cg, name)] = {xy.at(0).get<double>(), xy.at(1).get<double>()};
  for (auto& [name, poly] : j.at("regions").items()) {
    int c = cluster_from_json(cg, name);
    for (const auto& xy : poly) d.regions[c].push_back({xy.at(0).get<double>(), xy.at(1).get<double>()});
  }
  return d;
}

nlohmann::json to_json(const BetaPlan& p, const ClusteredGraph& cg) {
  const auto& vn = cg.vertex_names();
  nlohmann::json j;
  j["mode"] = "er";
  j["instance"] = serialize(cg);
  j["c_connected"] = p.c_connected;
  j["embedding"] = embedding_to_json(p.embedding, vn);
  j["tree"] = nlohmann::json::array();
  for (const auto& te : p.tree.edges)
    j["tree"].push_back({{"ends", {vn[te.u], vn[te.v]}}, {"auxiliary", !te.in_graph()}});
  j["routes"] = nlohmann::json::array();
  for (const auto& r : p.routes) {
    const auto& te = p.tree.edges[r.tree_edge];
    nlohmann::json crossed = nlohmann::json::array();
    for (int e : r.crossed) crossed.push_back(edge_json(cg, e));
    j["routes"].push_back({{"tree_edge", {vn[te.u], vn[te.v]}}, {"crossed", crossed}});
  }
  j["ledger"] = nlohmann::json::array();
  for (auto& [k, v] : p.ledger)
    if (v > 0)
      j["ledger"].push_back(
          {{"edge", edge_json(cg, k.first)}, {"cluster", cg.cluster_names()[k.second]}, {"crossings", v}});
  j["beta"] = p.beta;
  return j;
}

BetaPlan beta_plan_from_json(const nlohmann::json& j, const ClusteredGraph& cg) {
  BetaPlan p;
  p.c_connected = j.value("c_connected", false);
  p.embedding = embedding_from_json(j.at("embedding"), cg.graph(), cg.vertex_names());
  for (const auto& te : j.at("tree")) {
    int u = vertex_from_json(cg, te.at("ends").at(0));
    int v = vertex_from_json(cg, te.at("ends").at(1));
    p.tree.edges.push_back({u, v, te.at("auxiliary").get<bool>() ? -1 : cg.find_edge(u, v)});
  }
  p.tree.cluster_edges.assign(cg.cluster_count(), {});
  for (int c = 0; c < cg.cluster_count(); ++c)
    for (int i = 0; i < static_cast<int>(p.tree.edges.size()); ++i)
      if (cg.contains(c, p.tree.edges[i].u) && cg.contains(c, p.tree.edges[i].v))
        p.tree.cluster_edges[c].push_back(i);
  for (const auto& r : j.at("routes")) {
    int u = vertex_from_json(cg, r.at("tree_edge").at(0));
    int v = vertex_from_json(cg, r.at("tree_edge").at(1));
    AuxRoute ar;
    for (int i = 0; i < static_cast<int>(p.tree.edges.size()); ++i)
      if (p.tree.edges[i].u == u && p.tree.edges[i].v == v) ar.tree_edge = i;
    if (ar.tree_edge < 0) throw Error(ErrorKind::Inconsistent, "route for an edge not in the tree");
    for (const auto& e : r.at("crossed")) ar.crossed.push_back(edge_from_json(cg, e));
    p.routes.push_back(ar);
  }
  for (const auto& it : j.at("ledger"))
    p.ledger[{edge_from_json(cg, it.at("edge")), cluster_from_json(cg, it.at("cluster"))}] =
        it.at("crossings").get<long long>();
  p.beta = j.at("beta").get<long long>();
  return p;
}

std::vector<Point> tutte_layout(const RotationSystem& rs) {
  std::vector<Point> pos(rs.n);
  if (rs.n == 0) return pos;
  Graph g(rs.n, rs.edges);
  std::vector<int> comp;
  int k = connected_components(g, comp);
  FaceSet fs = faces(rs);
  double offset = 0;
  for (int c = 0; c < k; ++c) {
    std::vector<int> members;
    for (int v = 0; v < rs.n; ++v)
      if (comp[v] == c) members.push_back(v);
    // Boundary: this component's outer walk, first visits only.
    std::vector<int> ring;
    std::vector<char> on_ring(rs.n, 0);
    for (int d : fs.faces[fs.outer]) {
      int v = rs.tail(d);
      if (comp[v] == c && !on_ring[v]) {
        on_ring[v] = 1;
        ring.push_back(v);
      }
    }
    if (ring.empty()) ring.push_back(members[0]), on_ring[members[0]] = 1;
    const double R = std::max(1.0, std::sqrt(static_cast<double>(members.size())) * 2);
    for (size_t i = 0; i < ring.size(); ++i) {
      double t = 2 * kPi * i / ring.size();
      pos[ring[i]] = {offset + R * std::cos(t), R * std::sin(t)};
    }
    std::vector<int> idx(rs.n, -1);
    int m = 0;
    for (int v : members)
      if (!on_ring[v]) idx[v] = m++;
    if (m > 0) {
      Eigen::SparseMatrix<double> L(m, m);
      Eigen::VectorXd bx = Eigen::VectorXd::Zero(m), by = Eigen::VectorXd::Zero(m);
      std::vector<Eigen::Triplet<double>> trip;
      for (int v : members) {
        if (idx[v] < 0) continue;
        trip.emplace_back(idx[v], idx[v], g.degree(v));
        for (auto inc : g.adj[v]) {
          int w = inc.neighbor;
          if (idx[w] >= 0) trip.emplace_back(idx[v], idx[w], -1.0);
          else {
            bx[idx[v]] += pos[w].x;
            by[idx[v]] += pos[w].y;
          }
        }
      }
      L.setFromTriplets(trip.begin(), trip.end());
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(L);
      if (lu.info() != Eigen::Success) throw Error(ErrorKind::Inconsistent, "Tutte system is singular");
      Eigen::VectorXd x = lu.solve(bx), y = lu.solve(by);
      for (int v : members)
        if (idx[v] >= 0) pos[v] = {x[idx[v]], y[idx[v]]};
    }
    offset += 2 * R + 2;
  }
  return pos;
}

namespace {

const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                          "#66a61e", "#e6ab02", "#a6761d", "#666666"};

struct Svg {
  std::ostringstream body;
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;

  void see(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  std::string finish() {
    if (x0 > x1) x0 = y0 = 0, x1 = y1 = 1;
    double pad = 0.05 * std::max(x1 - x0, y1 - y0) + 1;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << x0 - pad << ' '
        << -(y1 + pad) << ' ' << (x1 - x0) + 2 * pad << ' ' << (y1 - y0) + 2 * pad << "\">\n"
        << "<g transform=\"scale(1,-1)\">\n"
        << body.str() << "</g>\n</svg>\n";
    return out.str();
  }
};

void draw_graph(Svg& s, const ClusteredGraph& cg, const std::vector<Point>& pos, double r) {
  for (auto [a, b] : cg.edges())
    s.body << "<line x1=\"" << pos[a].x << "\" y1=\"" << pos[a].y << "\" x2=\"" << pos[b].x
           << "\" y2=\"" << pos[b].y << "\" stroke=\"black\" stroke-width=\"" << r / 3 << "\"/>\n";
  for (int v = 0; v < cg.vertex_count(); ++v)
    s.body << "<circle cx=\"" << pos[v].x << "\" cy=\"" << pos[v].y << "\" r=\"" << r
           << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << r / 4 << "\"><title>"
           << cg.vertex_names()[v] << "</title></circle>\n";
}

double dot_radius(const Svg& s) { return 0.01 * std::max({s.x1 - s.x0, s.y1 - s.y0, 1.0}); }

// Thick translucent strokes along each cluster's curves stand in for the
// region boundaries; deeper clusters get thinner strokes.
void draw_strip(Svg& s, const std::vector<Point>& pts, int cluster, int depth, double unit,
                const std::string& name) {
  std::ostringstream path;
  for (size_t i = 0; i < pts.size(); ++i)
    path << (i ? " L " : "M ") << pts[i].x << ' ' << pts[i].y;
  s.body << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << kPalette[cluster % 8]
         << "\" stroke-opacity=\"0.35\" stroke-linecap=\"round\" stroke-width=\""
         << unit * (6.0 / depth) << "\"><title>" << name << "</title></path>\n";
}

}  // namespace

std::string svg_of(const GeometricDrawing& d, const ClusteredGraph& cg) {
  Svg s;
  for (auto p : d.vertices) s.see(p);
  for (const auto& R : d.regions)
    for (auto p : R) s.see(p);
  double r = dot_radius(s);
  for (int c = 1; c < cg.cluster_count(); ++c) {
    std::ostringstream pts;
    for (auto p : d.regions[c]) pts << p.x << ',' << p.y << ' ';
    s.body << "<polygon points=\"" << pts.str() << "\" fill=\"" << kPalette[c % 8]
           << "\" fill-opacity=\"0.12\" stroke=\"" << kPalette[c % 8] << "\" stroke-width=\""
           << r * 0.8 / cg.depth(c) << "\"><title>" << cg.cluster_names()[c] << "</title></polygon>\n";
  }
  draw_graph(s, cg, d.vertices, r);
  return s.finish();
}

std::string svg_of(const BetaPlan& p, const ClusteredGraph& cg) {
  Svg s;
  auto pos = tutte_layout(p.embedding);
  for (auto q : pos) s.see(q);
  double r = dot_radius(s);
  std::vector<std::vector<Point>> curve(p.tree.edges.size());
  for (size_t i = 0; i < p.tree.edges.size(); ++i)
    curve[i] = {pos[p.tree.edges[i].u], pos[p.tree.edges[i].v]};
  for (const auto& rt : p.routes) {
    const auto& te = p.tree.edges[rt.tree_edge];
    std::vector<Point> pts{pos[te.u]};
    for (int e : rt.crossed) {
      auto [a, b] = cg.edges()[e];
      pts.push_back({(pos[a].x + pos[b].x) / 2, (pos[a].y + pos[b].y) / 2});
    }
    pts.push_back(pos[te.v]);
    curve[rt.tree_edge] = pts;
  }
  for (int c = 1; c < cg.cluster_count(); ++c)
    for (int i : p.tree.cluster_edges[c])
      draw_strip(s, curve[i], c, cg.depth(c), r, cg.cluster_names()[c]);
  draw_graph(s, cg, pos, r);
  return s.finish();
}

std::string svg_of(const GammaPlan& p, const ClusteredGraph& cg) {
  Svg s;
  auto pos = tutte_layout(p.embedding);
  for (auto q : pos) s.see(q);
  double r = dot_radius(s);
  FaceSet fs = faces(p.embedding);
  for (const auto& route : p.routes)
    for (const auto& [f, spokes] : route.hubs) {
      Point hub;
      auto vs = fs.vertices_of(p.embedding, f);
      for (int v : vs) hub = {hub.x + pos[v].x / vs.size(), hub.y + pos[v].y / vs.size()};
      for (int v : spokes)
        draw_strip(s, {hub, pos[v]}, route.cluster, cg.depth(route.cluster), r,
                   cg.cluster_names()[route.cluster]);
    }
  draw_graph(s, cg, pos, r);
  return s.finish();
}

}  // namespace cgd
