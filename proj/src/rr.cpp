#include "cgd/rr.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "cgd/constraints.hpp"
#include "cgd/error.hpp"
#include "cgd/model.hpp"
#include "cgd/union_find.hpp"

namespace cgd {

namespace {

constexpr int kPE = -1;  // parent edge inside pertinent rotations

std::vector<std::vector<char>> all_masks(const ClusteredGraph& cg) {
  std::vector<std::vector<char>> m(cg.cluster_count());
  for (int c = 0; c < cg.cluster_count(); ++c) m[c] = cg.cluster_mask(c);
  return m;
}

// Core of classify_embedding on a prepared face set. `in` is over local ids.
EmbeddingClass classify_core(const EmbeddedPertinent& p, const FaceSet& fs,
                             const std::vector<char>& in) {
  const auto& rs = p.rs;
  const int F = fs.count(), n = rs.n;
  EmbeddingClass c;
  if (std::none_of(in.begin(), in.end(), [](char x) { return x; })) return c;
  const int fL = fs.face_of_dart[dart_of(p.parent_edge, 0)];
  const int fR = fs.face_of_dart[dart_of(p.parent_edge, 1)];

  UnionFind uf(F + n);
  for (int v = 0; v < n; ++v)
    if (in[v])
      for (int f : fs.incidence[v]) uf.unite(F + v, f);
  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (in[v]) roots.push_back(uf.find(F + v));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  const int rL = uf.find(fL), rR = uf.find(fR);
  if (roots.size() == 1) {
    bool l = roots[0] == rL, r = roots[0] == rR;
    if (l && r) c.type = EmbeddingType::Traversable;
    else if (l || r) c.type = EmbeddingType::Sided, c.on_first = l;
    else c.type = EmbeddingType::Kernelized;
  } else if (roots.size() == 2 && rL != rR &&
             ((roots[0] == rL && roots[1] == rR) || (roots[0] == rR && roots[1] == rL))) {
    c.type = EmbeddingType::Bisided;
  } else {
    c.type = EmbeddingType::Unfeasible;
  }

  bool spined = false;
  if (in[p.pole_u] && in[p.pole_v]) {
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < static_cast<int>(rs.edges.size()); ++e) {
      if (e == p.parent_edge) continue;
      auto [a, b] = rs.edges[e];
      if (in[a] && in[b]) adj[a].push_back(b), adj[b].push_back(a);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> st{p.pole_u};
    seen[p.pole_u] = 1;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x])
        if (!seen[y]) seen[y] = 1, st.push_back(y);
    }
    spined = seen[p.pole_v];
  }

  UnionFind reg(F);
  for (int e = 0; e < static_cast<int>(rs.edges.size()); ++e) {
    if (e == p.parent_edge) continue;
    auto [a, b] = rs.edges[e];
    if (!(in[a] && in[b])) reg.unite(fs.face_of_dart[dart_of(e, 0)], fs.face_of_dart[dart_of(e, 1)]);
  }
  const int gL = reg.find(fL), gR = reg.find(fR);
  for (int v = 0; v < n; ++v) {
    if (in[v]) continue;
    int r = reg.find(fs.incidence[v].front());
    if (r == gL) c.dirty_first = true;
    if (r == gR) c.dirty_second = true;
    if (r != gL && r != gR) c.internal_violation = true;
  }
  if (spined)
    c.spine = (c.dirty_first && c.dirty_second) ? SpineKind::CentralSpined : SpineKind::SideSpined;
  return c;
}

// ---------------------------------------------------------------------------
// Bottom-up pass for one reference edge.

struct PertEmb {
  int u = -1, v = -1;
  std::map<int, std::vector<int>> rot;  // vertex -> cyclic edge ids, kPE for the parent edge
};

struct Local {
  EmbeddedPertinent ep;
  std::unordered_map<int, int> vid;
  std::unordered_map<int, int> eid;
  std::vector<int> gedge;  // local edge -> edge of G (kPE for the parent)

  int dart(int g, int tail) const {
    int le = eid.at(g);
    return dart_of(le, ep.rs.edges[le].first == vid.at(tail) ? 0 : 1);
  }
};

Local localize(const PertEmb& pe, const Graph& g) {
  Local L;
  auto& rs = L.ep.rs;
  for (auto& [x, r] : pe.rot) {
    L.vid[x] = static_cast<int>(L.ep.global.size());
    L.ep.global.push_back(x);
  }
  rs.n = static_cast<int>(L.ep.global.size());
  std::vector<int> es;
  for (auto& [x, r] : pe.rot)
    for (int e : r)
      if (e >= 0 && g.edges[e].first == x) es.push_back(e);
  std::sort(es.begin(), es.end());
  for (int e : es) {
    L.eid[e] = static_cast<int>(rs.edges.size());
    L.gedge.push_back(e);
    rs.edges.emplace_back(L.vid.at(g.edges[e].first), L.vid.at(g.edges[e].second));
  }
  L.ep.parent_edge = static_cast<int>(rs.edges.size());
  L.gedge.push_back(kPE);
  L.ep.pole_u = L.vid.at(pe.u);
  L.ep.pole_v = L.vid.at(pe.v);
  rs.edges.emplace_back(L.ep.pole_u, L.ep.pole_v);
  rs.rotation.assign(rs.n, {});
  for (auto& [x, r] : pe.rot) {
    auto& out = rs.rotation[L.vid.at(x)];
    for (int e : r)
      out.push_back(e == kPE ? dart_of(L.ep.parent_edge, x == pe.u ? 0 : 1)
                             : dart_of(L.eid.at(e), g.edges[e].first == x ? 0 : 1));
  }
  rs.outer = {dart_of(L.ep.parent_edge, 0)};
  return L;
}

struct NodeData {
  bool ok = false;
  PertEmb emb;
  std::vector<EmbeddingClass> cls;  // per cluster
  std::vector<int> count;           // cluster vertices in pert
  std::vector<char> full;           // all pert vertices in the cluster
  std::vector<char> foreign;        // a non-cluster vertex besides the poles
  std::pair<int, int> side_first{-1, -1}, side_second{-1, -1};  // (edge, tail) on f', f''
};

struct Preference {
  std::vector<std::vector<std::pair<Literal, Literal>>> options;
};

class Rooted {
 public:
  Rooted(const ClusteredGraph& cg, const std::vector<std::vector<char>>& mask, int ref)
      : cg_(cg), g_(cg.graph()), mask_(mask), K_(cg.cluster_count()) {
    t_ = build_spqr(g_, ref);
    data_.resize(t_.size());
  }

  FeasibilityResult run();

 private:
  const ClusteredGraph& cg_;
  const Graph& g_;
  const std::vector<std::vector<char>>& mask_;
  const int K_;
  SpqrTree t_;
  std::vector<NodeData> data_;
  std::optional<Violation> fail_;
  int top_ = -1;
  // Mirror the top skeleton: decides which side of the reference edge the
  // children lean towards, which matters once that side is the outer face.
  bool mirror_ = false;

  bool fail(int node, int cluster, const std::string& cond, const std::string& detail) {
    if (!fail_) {
      Violation v;
      v.cluster = cluster;
      v.condition = cond;
      v.node = node;
      v.detail = detail;
      fail_ = v;
    }
    return false;
  }

  bool in(int mu, int x) const { return mask_[mu][x]; }
  void finish(int node);
  void make_q(int node);
  bool process(int node);
  std::optional<std::vector<int>> p_order(int node, const std::vector<int>& vis,
                                          const std::unordered_map<int, int>& vidx);
  PertEmb compose(int node, const std::map<int, std::vector<int>>& X, const std::vector<int>& vis,
                  const std::vector<bool>& flip) const;
};

void Rooted::finish(int node) {
  auto& d = data_[node];
  Local L = localize(d.emb, g_);
  FaceSet fs = faces(L.ep.rs);
  const int n = L.ep.rs.n;
  d.cls.assign(K_, {});
  d.count.assign(K_, 0);
  d.full.assign(K_, 0);
  d.foreign.assign(K_, 0);
  std::vector<char> loc(n);
  for (int mu = 1; mu < K_; ++mu) {
    int cnt = 0;
    bool foreign = false;
    for (int i = 0; i < n; ++i) {
      loc[i] = mask_[mu][L.ep.global[i]];
      cnt += loc[i];
      if (!loc[i] && i != L.ep.pole_u && i != L.ep.pole_v) foreign = true;
    }
    d.count[mu] = cnt;
    d.full[mu] = cnt == n;
    d.foreign[mu] = foreign;
    if (cnt) d.cls[mu] = classify_core(L.ep, fs, loc);
  }
  auto side = [&](int dir) {
    int x = L.ep.rs.next_in_face(dart_of(L.ep.parent_edge, dir));
    return std::make_pair(L.gedge[edge_of(x)], L.ep.global[L.ep.rs.tail(x)]);
  };
  d.side_first = side(0);
  d.side_second = side(1);
}

void Rooted::make_q(int node) {
  const auto& nd = t_.nodes[node];
  auto& d = data_[node];
  d.emb.u = nd.u;
  d.emb.v = nd.v;
  d.emb.rot[nd.u] = {kPE, nd.edge};
  d.emb.rot[nd.v] = {kPE, nd.edge};
  finish(node);
  d.ok = true;
}

PertEmb Rooted::compose(int node, const std::map<int, std::vector<int>>& X,
                        const std::vector<int>& vis, const std::vector<bool>& flip) const {
  PertEmb e;
  e.u = t_.nodes[node].u;
  e.v = t_.nodes[node].v;
  for (auto& [x, refs] : X) {
    auto& out = e.rot[x];
    for (int r : refs) {
      if (r == kPE) {
        out.push_back(kPE);
        continue;
      }
      auto rr = data_[vis[r]].emb.rot.at(x);
      if (flip[r]) std::reverse(rr.begin(), rr.end());
      size_t p = std::find(rr.begin(), rr.end(), kPE) - rr.begin();
      for (size_t j = 1; j < rr.size(); ++j) out.push_back(rr[(p + j) % rr.size()]);
    }
  }
  for (size_t i = 0; i < vis.size(); ++i)
    for (auto& [y, r] : data_[vis[i]].emb.rot) {
      if (X.count(y)) continue;
      auto& out = e.rot[y];
      out = r;
      if (flip[i]) std::reverse(out.begin(), out.end());
    }
  return e;
}

// Order of the children of a P-node. Every constraint below is a necessary
// condition read off the face model of the P skeleton; flips are settled
// afterwards.
std::optional<std::vector<int>> Rooted::p_order(int node, const std::vector<int>& vis,
                                                const std::unordered_map<int, int>& vidx) {
  const auto& nd = t_.nodes[node];
  std::vector<int> kids;
  for (const auto& se : nd.skeleton)
    if (se.child >= 0) kids.push_back(se.child);
  const int k = static_cast<int>(kids.size());
  std::vector<int> universe(k);
  for (int i = 0; i < k; ++i) universe[i] = i;
  PQTree pq(universe);
  auto pv = pertinent_vertices(t_, node);
  // Soft constraints, tried after every hard one is in.
  std::vector<std::vector<int>> wishes;

  for (int mu = 1; mu < K_; ++mu) {
    int cnt = 0;
    for (int x : pv) cnt += in(mu, x);
    if (!cnt) continue;
    const bool out = cnt < static_cast<int>(cg_.cluster_vertices(mu).size());
    const bool iu = in(mu, nd.u), iv = in(mu, nd.v);
    std::vector<char> T(k), touched(k), wall(k), full(k);
    for (int i = 0; i < k; ++i) {
      const auto& ch = t_.nodes[kids[i]];
      std::vector<int> links, inner;
      if (ch.kind == NodeKind::S) {
        for (size_t j = 0; j < ch.skeleton.size(); ++j) {
          if (ch.skeleton[j].child < 0) continue;
          links.push_back(ch.skeleton[j].child);
          if (j > 0) inner.push_back(ch.skeleton[j].u);
        }
      } else {
        links.push_back(kids[i]);
      }
      bool t = false, tc = false, w = true, f = true;
      for (int x : inner) {
        if (in(mu, x)) t = tc = true;
        else w = f = false;
      }
      for (int l : links) {
        const auto& ld = data_[vis[vidx.at(l)]];
        if (ld.cls[mu].type == EmbeddingType::Traversable) t = true;
        if (ld.count[mu]) tc = true;
        if (ld.cls[mu].spine == SpineKind::None) w = false;
        if (!ld.full[mu]) f = false;
      }
      T[i] = t;
      touched[i] = tc;
      wall[i] = w && iu && iv;
      full[i] = wall[i] && f;
    }
    auto need = [&](std::vector<int> s, const char* cond) {
      if (s.size() < 2 || static_cast<int>(s.size()) >= k) return true;
      if (pq.reduce(s)) return true;
      return fail(node, mu, cond, "no order of the parallel skeleton");
    };
    auto pick = [&](auto pred) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i)
        if (pred(i)) s.push_back(i);
      return s;
    };
    if (!iu && !iv) {
      const char* c = "H(mu) disconnected";
      std::vector<int> N = pick([&](int i) { return touched[i] && !T[i]; });
      if (out) {
        if (!need(pick([&](int i) { return !T[i]; }), c)) return std::nullopt;
        for (int n : N)
          if (!need(pick([&](int i) { return !T[i] && i != n; }), c)) return std::nullopt;
      } else {
        std::vector<int> Ts = pick([&](int i) { return T[i]; });
        if (!Ts.empty()) {
          if (!need(Ts, c)) return std::nullopt;
          for (int n : N) {
            auto s = Ts;
            s.push_back(n);
            if (!need(s, c)) return std::nullopt;
          }
        } else {
          for (size_t a = 0; a < N.size(); ++a)
            for (size_t b = a + 1; b < N.size(); ++b)
              if (!need({N[a], N[b]}, c)) return std::nullopt;
        }
      }
      // Keep everything touched on one side of the parent edge.
      if (out) wishes.push_back(pick([&](int i) { return touched[i] != 0; }));
    }
    if (iu && iv) {
      const char* c = "enclosed vertex";
      std::vector<int> W = pick([&](int i) { return wall[i]; });
      std::vector<int> Fu = pick([&](int i) { return full[i]; });
      if (W.size() >= 2) {
        if (!Fu.empty()) {
          if (!need(Fu, c)) return std::nullopt;
          for (int w : W) {
            if (full[w]) continue;
            auto s = Fu;
            s.push_back(w);
            if (!need(s, c)) return std::nullopt;
          }
        } else {
          for (size_t a = 0; a < W.size(); ++a)
            for (size_t b = a + 1; b < W.size(); ++b)
              if (!need({W[a], W[b]}, c)) return std::nullopt;
        }
      }
      // A clean wall next to the parent edge leaves that side clean.
      if (!Fu.empty())
        wishes.push_back(pick([&](int i) { return !full[i]; }));
      else if (!W.empty())
        wishes.push_back(pick([&](int i) { return !wall[i]; }));
    }
  }
  for (auto& w : wishes) {
    if (w.size() < 2 || static_cast<int>(w.size()) >= k) continue;
    PQTree trial = pq;
    if (trial.reduce(w)) pq = std::move(trial);
  }
  std::vector<int> order;
  for (int i : pq.frontier()) order.push_back(kids[i]);
  return order;
}

bool Rooted::process(int node) {
  const auto& nd = t_.nodes[node];
  std::vector<int> vis;
  std::unordered_map<int, int> vidx;
  auto addvis = [&](int c) {
    vidx[c] = static_cast<int>(vis.size());
    vis.push_back(c);
  };
  if (nd.kind == NodeKind::S) {
    for (const auto& se : nd.skeleton)
      if (se.child >= 0) addvis(se.child);
  } else {
    for (const auto& vn : visible_nodes(t_, node)) addvis(vn.node);
  }
  for (int c : vis) {
    if (t_.nodes[c].kind == NodeKind::Q) make_q(c);
    else if (!process(c)) return false;
  }

  // Expanded skeleton: S children replaced by their chains.
  std::map<int, std::vector<int>> X;
  auto chain = [&](int c) {
    std::vector<const SkeletonEdge*> links;
    for (const auto& se : t_.nodes[c].skeleton)
      if (se.child >= 0) links.push_back(&se);
    return links;
  };
  auto end_ref = [&](int c, int at) {
    if (t_.nodes[c].kind != NodeKind::S) return vidx.at(c);
    auto links = chain(c);
    return at == links.front()->u ? vidx.at(links.front()->child) : vidx.at(links.back()->child);
  };
  auto inner = [&](int c) {
    if (t_.nodes[c].kind != NodeKind::S) return;
    auto links = chain(c);
    for (size_t j = 1; j < links.size(); ++j)
      X[links[j]->u] = {vidx.at(links[j - 1]->child), vidx.at(links[j]->child)};
  };

  if (nd.kind == NodeKind::S) {
    auto links = chain(node);
    X[links.front()->u] = {kPE, vidx.at(links.front()->child)};
    X[links.back()->v] = {vidx.at(links.back()->child), kPE};
    for (size_t j = 1; j < links.size(); ++j)
      X[links[j]->u] = {vidx.at(links[j - 1]->child), vidx.at(links[j]->child)};
  } else if (nd.kind == NodeKind::P) {
    auto order = p_order(node, vis, vidx);
    if (!order) return false;
    if (mirror_ && node == top_) std::reverse(order->begin(), order->end());
    auto& ru = X[nd.u];
    auto& rv = X[nd.v];
    ru.push_back(kPE);
    rv.push_back(kPE);
    for (int c : *order) ru.push_back(end_ref(c, nd.u));
    for (auto it = order->rbegin(); it != order->rend(); ++it) rv.push_back(end_ref(*it, nd.v));
    for (int c : *order) inner(c);
  } else {
    std::vector<int> l2g;
    Graph sk = skeleton_graph(nd, l2g);
    RotationSystem srs = planar_embed(sk);
    if (mirror_ && node == top_) srs = srs.mirrored();
    for (int lv = 0; lv < sk.n; ++lv) {
      auto& out = X[l2g[lv]];
      for (int dd : srs.rotation[lv]) {
        int c = nd.skeleton[edge_of(dd)].child;
        out.push_back(c == kParentEdge ? kPE : end_ref(c, l2g[lv]));
      }
    }
    for (const auto& se : nd.skeleton)
      if (se.child >= 0) inner(se.child);
  }

  const int V = static_cast<int>(vis.size());
  PertEmb base = compose(node, X, vis, std::vector<bool>(V, false));
  Local L = localize(base, g_);
  FaceSet fs = faces(L.ep.rs);
  const int F = fs.count();
  std::vector<int> A(V), B(V);
  std::vector<char> isX(F, 0);
  for (int i = 0; i < V; ++i) {
    const auto& cd = data_[vis[i]];
    A[i] = fs.face_of_dart[L.dart(cd.side_first.first, cd.side_first.second)];
    B[i] = fs.face_of_dart[L.dart(cd.side_second.first, cd.side_second.second)];
    isX[A[i]] = isX[B[i]] = 1;
  }
  const int fL = fs.face_of_dart[dart_of(L.ep.parent_edge, 0)];
  const int fR = fs.face_of_dart[dart_of(L.ep.parent_edge, 1)];
  isX[fL] = isX[fR] = 1;
  std::map<int, std::vector<int>> xfaces;
  for (auto& [x, refs] : X) {
    auto& fl = xfaces[x];
    for (int dd : L.ep.rs.rotation[L.vid.at(x)])
      if (isX[fs.face_of_dart[dd]]) fl.push_back(fs.face_of_dart[dd]);
    std::sort(fl.begin(), fl.end());
    fl.erase(std::unique(fl.begin(), fl.end()), fl.end());
  }

  const bool top = node == top_;
  auto pv = pertinent_vertices(t_, node);
  TwoSatProblem sat;
  sat.variables = V;
  std::vector<Preference> prefs;
  auto lit_first_on_A = [](int i) { return Literal{i, false}; };  // not flipped

  for (int mu = 1; mu < K_; ++mu) {
    int cnt = 0;
    for (int x : pv) cnt += in(mu, x);
    if (!cnt) continue;
    const bool out = cnt < static_cast<int>(cg_.cluster_vertices(mu).size());

    // (i) connectivity of H(mu) restricted to pert(node).
    {
      UnionFind uf(F);
      std::vector<int> fixed;
      int kernels = 0;
      struct Var {
        int i;
        Literal onA;
      };
      std::vector<Var> var;
      for (auto& [x, fl] : xfaces) {
        if (!in(mu, x)) continue;
        for (int f : fl) uf.unite(fl.front(), f);
        fixed.push_back(fl.front());
      }
      for (int i = 0; i < V; ++i) {
        const auto& c = data_[vis[i]].cls[mu];
        switch (c.type) {
          case EmbeddingType::Untouched: break;
          case EmbeddingType::Traversable:
            uf.unite(A[i], B[i]);
            fixed.push_back(A[i]);
            break;
          case EmbeddingType::Sided:
            var.push_back({i, c.on_first ? lit_first_on_A(i) : !lit_first_on_A(i)});
            break;
          case EmbeddingType::Bisided:
            fixed.push_back(A[i]);
            fixed.push_back(B[i]);
            break;
          case EmbeddingType::Kernelized: ++kernels; break;
          case EmbeddingType::Unfeasible:
            return fail(node, mu, "H(mu) disconnected", "child with a stranded component");
        }
      }
      const int gL = uf.find(fL), gR = uf.find(fR);
      const char* cond = "H(mu) disconnected";
      if (out) {
        if (kernels) return fail(node, mu, cond, "component enclosed inside a child");
        for (int f : fixed) {
          int g = uf.find(f);
          if (g != gL && g != gR) return fail(node, mu, cond, "component away from the parent edge");
        }
        for (auto& vv : var) {
          int ga = uf.find(A[vv.i]), gb = uf.find(B[vv.i]);
          bool okA = ga == gL || ga == gR, okB = gb == gL || gb == gR;
          if (!okA && !okB) return fail(node, mu, cond, "component away from the parent edge");
          if (okA && !okB) sat.unit(vv.onA);
          if (!okA && okB) sat.unit(!vv.onA);
        }
        if (gL != gR) {
          std::set<int> fg;
          for (int f : fixed) fg.insert(uf.find(f));
          std::vector<int> targets;
          if (fg.empty()) targets = {gL, gR};
          else if (fg.size() == 1) targets = {*fg.begin()};
          Preference pr;
          for (int tg : targets) {
            std::vector<std::pair<Literal, Literal>> cl;
            bool possible = true;
            for (auto& vv : var) {
              bool a = uf.find(A[vv.i]) == tg, b = uf.find(B[vv.i]) == tg;
              if (!a && !b) possible = false;
              else if (a && !b) cl.emplace_back(vv.onA, vv.onA);
              else if (!a && b) cl.emplace_back(!vv.onA, !vv.onA);
            }
            if (possible) pr.options.push_back(cl);
          }
          if (!pr.options.empty()) prefs.push_back(pr);
        }
      } else {
        if (kernels) {
          if (kernels > 1 || !fixed.empty() || !var.empty())
            return fail(node, mu, cond, "component enclosed inside a child");
        } else {
          std::set<int> fg;
          for (int f : fixed) fg.insert(uf.find(f));
          if (fg.size() > 1) return fail(node, mu, cond, "components on separate faces");
          if (fg.size() == 1) {
            int g0 = *fg.begin();
            for (auto& vv : var) {
              bool a = uf.find(A[vv.i]) == g0, b = uf.find(B[vv.i]) == g0;
              if (!a && !b) return fail(node, mu, cond, "components on separate faces");
              if (a && !b) sat.unit(vv.onA);
              if (!a && b) sat.unit(!vv.onA);
            }
          } else {
            for (size_t p = 0; p < var.size(); ++p)
              for (size_t q = p + 1; q < var.size(); ++q)
                for (int a = 0; a < 2; ++a)
                  for (int b = 0; b < 2; ++b) {
                    int fp = a ? A[var[p].i] : B[var[p].i];
                    int fq = b ? A[var[q].i] : B[var[q].i];
                    if (uf.find(fp) == uf.find(fq)) continue;
                    Literal lp = a ? var[p].onA : !var[p].onA;
                    Literal lq = b ? var[q].onA : !var[q].onA;
                    sat.add(!lp, !lq);
                  }
          }
        }
      }
      if (!two_sat_solve(sat)) return fail(node, mu, cond, "no consistent flips");
    }

    // (ii) cluster cycles must not enclose foreign vertices.
    bool walls = false;
    for (int i = 0; i < V; ++i)
      if (data_[vis[i]].cls[mu].spine != SpineKind::None) walls = true;
    if (!walls) continue;
    const bool root_wall = top && in(mu, nd.u) && in(mu, nd.v);
    const char* cond = "enclosed vertex";
    UnionFind reg(F);
    for (int i = 0; i < V; ++i)
      if (data_[vis[i]].cls[mu].spine == SpineKind::None) reg.unite(A[i], B[i]);
    UnionFind walled = reg;
    if (!root_wall) reg.unite(fL, fR);
    const int outer = root_wall ? reg.find(fR) : reg.find(fL);

    for (auto& [x, fl] : xfaces)
      if (!in(mu, x) && reg.find(fl.front()) != outer)
        return fail(node, mu, cond, "foreign skeleton vertex inside a cluster cycle");
    for (int i = 0; i < V; ++i) {
      const auto& cd = data_[vis[i]];
      if (cd.cls[mu].spine == SpineKind::None && cd.foreign[mu] && reg.find(A[i]) != outer)
        return fail(node, mu, cond, "foreign vertices inside a cluster cycle");
    }
    // Whether wall i, flipped or not, keeps its dirt on faces accepted by ok.
    auto wall_fits = [&](int i, bool flipped, auto ok) {
      const auto& c = data_[vis[i]].cls[mu];
      int onF = flipped ? B[i] : A[i], onS = flipped ? A[i] : B[i];
      return (!c.dirty_first || ok(onF)) && (!c.dirty_second || ok(onS));
    };
    for (int i = 0; i < V; ++i) {
      if (data_[vis[i]].cls[mu].spine == SpineKind::None) continue;
      auto ok = [&](int f) { return reg.find(f) == outer; };
      bool f0 = wall_fits(i, false, ok), f1 = wall_fits(i, true, ok);
      if (!f0 && !f1) return fail(node, mu, cond, "foreign vertices inside a cluster cycle");
      if (f0 && !f1) sat.unit(Literal{i, false});
      if (!f0 && f1) sat.unit(Literal{i, true});
    }
    if (!two_sat_solve(sat)) return fail(node, mu, cond, "no consistent flips");

    // Prefer a clean side, so the parent can place this as an outer wall.
    if (!root_wall && in(mu, nd.u) && in(mu, nd.v)) {
      UnionFind path(g_.n);
      for (int i = 0; i < V; ++i)
        if (data_[vis[i]].cls[mu].spine != SpineKind::None)
          path.unite(t_.nodes[vis[i]].u, t_.nodes[vis[i]].v);
      if (path.find(nd.u) == path.find(nd.v)) {
        Preference pr;
        for (int side : {fL, fR}) {
          int R = walled.find(side);
          auto clean = [&](int f) { return walled.find(f) != R; };
          bool possible = true;
          std::vector<std::pair<Literal, Literal>> cl;
          for (auto& [x, fl] : xfaces)
            if (!in(mu, x) && !clean(fl.front())) possible = false;
          for (int i = 0; i < V && possible; ++i) {
            const auto& cd = data_[vis[i]];
            if (cd.cls[mu].spine == SpineKind::None) {
              if (cd.foreign[mu] && !clean(A[i])) possible = false;
              continue;
            }
            bool f0 = wall_fits(i, false, clean), f1 = wall_fits(i, true, clean);
            if (!f0 && !f1) possible = false;
            else if (f0 && !f1) cl.emplace_back(Literal{i, false}, Literal{i, false});
            else if (!f0 && f1) cl.emplace_back(Literal{i, true}, Literal{i, true});
          }
          if (possible) pr.options.push_back(cl);
        }
        if (!pr.options.empty()) prefs.insert(prefs.begin(), pr);
      }
    }
  }

  auto sol = two_sat_solve(sat);
  if (!sol) return fail(node, -1, "H(mu) disconnected", "no consistent flips");
  for (const auto& pr : prefs) {
    for (const auto& opt : pr.options) {
      TwoSatProblem trial = sat;
      for (auto& c : opt) trial.add(c.first, c.second);
      if (auto s = two_sat_solve(trial)) {
        sat = std::move(trial);
        sol = s;
        break;
      }
    }
  }

  auto& d = data_[node];
  d.emb = compose(node, X, vis, *sol);
  finish(node);
  for (int mu = 1; mu < K_; ++mu) {
    if (!d.count[mu]) continue;
    const auto& c = d.cls[mu];
    bool out = d.count[mu] < static_cast<int>(cg_.cluster_vertices(mu).size());
    bool bad = c.internal_violation || c.type == EmbeddingType::Unfeasible ||
               (out && c.type == EmbeddingType::Kernelized) ||
               (!out && c.type == EmbeddingType::Bisided);
    if (bad) return fail(node, mu, "inconsistent", "local model disagrees with the embedding");
  }
  d.ok = true;
  return true;
}

FeasibilityResult Rooted::run() {
  FeasibilityResult res;
  res.reference_edge = t_.reference_edge;
  const auto& root = t_.nodes[t_.root];
  const int ref = t_.reference_edge;
  if (root.children.empty()) {
    res.feasible = true;
    res.witness = planar_embed(g_);
    return res;
  }
  top_ = root.children.front();
  // Second round mirrored; an S-node on top looks the same either way.
  std::optional<Violation> first;
  for (int round = 0; round < (t_.nodes[top_].kind == NodeKind::S ? 1 : 2); ++round) {
    mirror_ = round == 1;
    fail_.reset();
    data_.assign(t_.size(), {});
    if (!process(top_)) {
      if (!first) first = fail_;
      continue;
    }
    RotationSystem rs;
    rs.n = g_.n;
    rs.edges = g_.edges;
    rs.rotation.assign(g_.n, {});
    const auto& emb = data_[top_].emb;
    for (auto& [x, r] : emb.rot)
      for (int e : r) {
        int ge = e == kPE ? ref : e;
        rs.rotation[x].push_back(dart_of(ge, g_.edges[ge].first == x ? 0 : 1));
      }
    // Outer face on the f'' side of the reference edge.
    rs.outer = {dart_of(ref, g_.edges[ref].first == emb.v ? 0 : 1)};
    auto chk = check_fixed_embedding(cg_, rs);
    if (chk.feasible) {
      res.feasible = true;
      res.witness = rs;
      return res;
    }
    if (!first) {
      Violation v = chk.violation.value_or(Violation{});
      v.condition = "inconsistent";
      v.detail = "assembled embedding fails the fixed-embedding check";
      first = v;
    }
  }
  res.violation = first;
  return res;
}

// Fast test of one rotation system: a feasible outer face, if any.
std::optional<int> feasible_outer(const RotationSystem& rs, const FaceSet& fs,
                                  const std::vector<std::vector<char>>& mask) {
  const int F = fs.count(), n = rs.n;
  std::vector<char> ok(F, 1);
  for (size_t mu = 1; mu < mask.size(); ++mu) {
    const auto& in = mask[mu];
    UnionFind uf(F + n);
    int first = -1;
    bool split = false;
    for (int v = 0; v < n; ++v)
      if (in[v])
        for (int f : fs.incidence[v]) uf.unite(F + v, f);
    for (int v = 0; v < n && !split; ++v) {
      if (!in[v]) continue;
      int r = uf.find(F + v);
      if (first < 0) first = r;
      else if (r != first) split = true;
    }
    if (split) return std::nullopt;
    UnionFind reg(F);
    for (size_t e = 0; e < rs.edges.size(); ++e) {
      auto [a, b] = rs.edges[e];
      if (!(in[a] && in[b]))
        reg.unite(fs.face_of_dart[dart_of(static_cast<int>(e), 0)],
                  fs.face_of_dart[dart_of(static_cast<int>(e), 1)]);
    }
    int dirty = -1;
    for (int v = 0; v < n; ++v) {
      if (in[v]) continue;
      int r = reg.find(fs.incidence[v].front());
      if (dirty < 0) dirty = r;
      else if (r != dirty) return std::nullopt;
    }
    if (dirty >= 0)
      for (int f = 0; f < F; ++f)
        if (reg.find(f) != dirty) ok[f] = 0;
  }
  for (int f = 0; f < F; ++f)
    if (ok[f]) return f;
  return std::nullopt;
}

void require_rr_input(const ClusteredGraph& cg) {
  if (!is_planar(cg.graph())) throw Error(ErrorKind::NonPlanar, "graph is not planar");
  if (!is_biconnected(cg.graph())) throw Error(ErrorKind::NotBiconnected, "graph is not biconnected");
}

}  // namespace

const char* to_string(EmbeddingType t) {
  switch (t) {
    case EmbeddingType::Untouched: return "untouched";
    case EmbeddingType::Traversable: return "traversable";
    case EmbeddingType::Sided: return "sided";
    case EmbeddingType::Bisided: return "bisided";
    case EmbeddingType::Kernelized: return "kernelized";
    case EmbeddingType::Unfeasible: return "unfeasible";
  }
  return "?";
}

const char* to_string(SpineKind k) {
  switch (k) {
    case SpineKind::None: return "none";
    case SpineKind::SideSpined: return "side-spined";
    case SpineKind::CentralSpined: return "central-spined";
  }
  return "?";
}

HMu h_mu(const RotationSystem& rs, const ClusteredGraph& cg, int cluster) {
  require_same_graph(rs, cg.graph());
  if (cluster < 0 || cluster >= cg.cluster_count())
    throw Error(ErrorKind::UnknownIdentifier, "unknown cluster index " + std::to_string(cluster));
  HMu h;
  h.vertices = cg.cluster_vertices(cluster);
  std::vector<int> local(rs.n, -1);
  for (size_t i = 0; i < h.vertices.size(); ++i) local[h.vertices[i]] = static_cast<int>(i);
  h.graph = Graph(static_cast<int>(h.vertices.size()));
  FaceSet fs = faces(rs);
  std::set<std::pair<int, int>> seen;
  for (int f = 0; f < fs.count(); ++f) {
    std::vector<int> on;
    for (int v : fs.vertices_of(rs, f))
      if (local[v] >= 0) on.push_back(local[v]);
    for (size_t a = 0; a < on.size(); ++a)
      for (size_t b = a + 1; b < on.size(); ++b)
        if (seen.emplace(on[a], on[b]).second) h.graph.add_edge(on[a], on[b]);
  }
  return h;
}

FeasibilityResult check_fixed_embedding(const ClusteredGraph& cg, const RotationSystem& rs) {
  require_same_graph(rs, cg.graph());
  FaceSet fs = faces(rs);
  const int F = fs.count();
  FeasibilityResult res;
  for (int mu = 0; mu < cg.cluster_count(); ++mu) {
    const auto& vs = cg.cluster_vertices(mu);
    UnionFind uf(F + rs.n);
    for (int v : vs)
      for (int f : fs.incidence[v]) uf.unite(F + v, f);
    for (int v : vs) {
      if (uf.find(F + v) == uf.find(F + vs.front())) continue;
      Violation vi;
      vi.cluster = mu;
      vi.condition = "H(mu) disconnected";
      vi.vertex = v;
      vi.detail = "no face path from " + cg.vertex_names()[vs.front()] + " to " +
                  cg.vertex_names()[v];
      res.violation = vi;
      return res;
    }
  }
  for (int mu = 0; mu < cg.cluster_count(); ++mu) {
    if (auto w = enclosed_violation(rs, cg, mu)) {
      Violation vi;
      vi.cluster = mu;
      vi.condition = "enclosed vertex";
      vi.cycle = w->cycle;
      vi.vertex = w->vertex;
      res.violation = vi;
      return res;
    }
  }
  res.feasible = true;
  res.witness = rs;
  return res;
}

FeasibilityResult check_fixed_embedding(const ClusteredGraph& cg, const RotationSystem& rs,
                                        int outer_dart) {
  return check_fixed_embedding(cg, with_outer_face(rs, outer_dart));
}

namespace {

// Flags of a piece given by its edges and poles.
ClusterEdgeFlags piece_flags(const Graph& g, const std::vector<int>& edges, int u, int v,
                             const std::vector<char>& in) {
  ClusterEdgeFlags f;
  if (edges.empty()) return f;
  std::set<int> vs;
  for (int e : edges) vs.insert(g.edges[e].first), vs.insert(g.edges[e].second);
  f.full = true;
  for (int x : vs) {
    if (!in[x]) f.full = false;
    else if (x != u && x != v) f.touched = true;
  }
  if (in[u] && in[v]) {
    UnionFind uf(g.n);
    for (int e : edges)
      if (in[g.edges[e].first] && in[g.edges[e].second]) uf.unite(g.edges[e].first, g.edges[e].second);
    f.spined = uf.find(u) == uf.find(v);
  }
  f.traversable = in[u] || in[v];
  return f;
}

}  // namespace

std::vector<std::vector<ClusterEdgeFlags>> classify_flags(const SpqrTree& t, const ClusteredGraph& cg) {
  auto mask = all_masks(cg);
  std::vector<std::vector<ClusterEdgeFlags>> out(t.size());
  for (int x = 0; x < t.size(); ++x) {
    const auto& nd = t.nodes[x];
    out[x].resize(cg.cluster_count());
    for (int mu = 0; mu < cg.cluster_count(); ++mu)
      out[x][mu] = piece_flags(t.graph, nd.pert, nd.u, nd.v, mask[mu]);
  }
  return out;
}

std::vector<ClusterEdgeFlags> outside_flags(const SpqrTree& t, const ClusteredGraph& cg, int node) {
  auto mask = all_masks(cg);
  const auto& nd = t.nodes.at(node);
  std::vector<char> inside(t.graph.edge_count(), 0);
  for (int e : nd.pert) inside[e] = 1;
  std::vector<int> rest;
  for (int e = 0; e < t.graph.edge_count(); ++e)
    if (!inside[e]) rest.push_back(e);
  std::vector<ClusterEdgeFlags> out(cg.cluster_count());
  for (int mu = 0; mu < cg.cluster_count(); ++mu)
    out[mu] = piece_flags(t.graph, rest, nd.u, nd.v, mask[mu]);
  return out;
}

EmbeddingClass classify_embedding(const EmbeddedPertinent& p, const ClusteredGraph& cg, int cluster) {
  if (cluster < 0 || cluster >= cg.cluster_count())
    throw Error(ErrorKind::UnknownIdentifier, "unknown cluster index " + std::to_string(cluster));
  if (p.parent_edge < 0 || p.parent_edge >= static_cast<int>(p.rs.edges.size()) ||
      static_cast<int>(p.global.size()) != p.rs.n)
    throw Error(ErrorKind::BadParameter, "malformed embedded pertinent graph");
  if (p.rs.edges[p.parent_edge] != std::make_pair(p.pole_u, p.pole_v))
    throw Error(ErrorKind::BadParameter, "parent edge must join the poles");
  RotationSystem rs = p.rs;
  if (rs.outer.empty()) rs.outer = {dart_of(p.parent_edge, 0)};
  EmbeddedPertinent q = p;
  q.rs = rs;
  FaceSet fs = faces(rs);
  std::vector<char> in(rs.n);
  for (int i = 0; i < rs.n; ++i) in[i] = cg.contains(cluster, p.global[i]);
  return classify_core(q, fs, in);
}

SkeletonCheck check_skeleton_extensible(const SpqrNode& node, const RotationSystem& embedding,
                                        const std::vector<std::vector<ClusterEdgeFlags>>& edge_flags,
                                        int cluster_count) {
  const int m = static_cast<int>(node.skeleton.size());
  if (static_cast<int>(embedding.edges.size()) != m || static_cast<int>(edge_flags.size()) != m)
    throw Error(ErrorKind::BadParameter, "skeleton embedding does not match the node");
  FaceSet fs = faces(embedding);
  const int F = fs.count();
  int pe = -1;
  for (int i = 0; i < m; ++i)
    if (node.skeleton[i].child == kParentEdge) pe = i;
  const int outer_face = pe >= 0 ? fs.face_of_dart[dart_of(pe, 0)] : fs.outer;
  auto face0 = [&](int i) { return fs.face_of_dart[dart_of(i, 0)]; };
  auto face1 = [&](int i) { return fs.face_of_dart[dart_of(i, 1)]; };

  for (int mu = 1; mu < cluster_count; ++mu) {
    auto flag = [&](int i) { return edge_flags[i][mu]; };
    // (i) everything strictly inside a face of the spined subgraph is full.
    UnionFind reg(F);
    for (int i = 0; i < m; ++i)
      if (!flag(i).spined) reg.unite(face0(i), face1(i));
    const int outer = reg.find(outer_face);
    for (int i = 0; i < m; ++i)
      if (!flag(i).spined && reg.find(face0(i)) != outer) return {false, mu, 1};

    // (ii) faces joined through traversable edges form one piece.
    UnionFind tr(F);
    std::vector<int> trav;
    for (int i = 0; i < m; ++i)
      if (flag(i).traversable) {
        tr.unite(face0(i), face1(i));
        trav.push_back(i);
      }
    for (int i : trav)
      if (tr.find(face0(i)) != tr.find(face0(trav.front()))) return {false, mu, 2};

    // (iii) touched edges reach that piece, or share one face.
    std::vector<char> trav_face(F, 0);
    for (int i : trav) trav_face[face0(i)] = trav_face[face1(i)] = 1;
    std::vector<int> touched;
    for (int i = 0; i < m; ++i)
      if (flag(i).touched && !flag(i).traversable) touched.push_back(i);
    if (!trav.empty()) {
      for (int i : touched)
        if (!trav_face[face0(i)] && !trav_face[face1(i)]) return {false, mu, 3};
    } else if (!touched.empty()) {
      std::set<int> common{face0(touched.front()), face1(touched.front())};
      for (int i : touched) {
        std::set<int> here{face0(i), face1(i)}, keep;
        for (int f : common)
          if (here.count(f)) keep.insert(f);
        common = keep;
      }
      if (common.empty()) return {false, mu, 3};
    }
  }
  return {};
}

FeasibilityResult test_rr_rooted(const ClusteredGraph& cg, int reference_edge) {
  require_rr_input(cg);
  auto mask = all_masks(cg);
  Rooted r(cg, mask, reference_edge);
  return r.run();
}

FeasibilityResult test_rr_biconnected(const ClusteredGraph& cg, const RrOptions& opt) {
  require_rr_input(cg);
  auto mask = all_masks(cg);
  const int m = cg.edge_count();
  std::vector<std::optional<FeasibilityResult>> results(m);
  std::atomic<int> next{0}, best{m};
  auto work = [&] {
    for (;;) {
      int e = next.fetch_add(1);
      if (e >= m || (opt.early_exit && e > best.load())) return;
      Rooted r(cg, mask, e);
      auto res = r.run();
      if (res.feasible) {
        int cur = best.load();
        while (e < cur && !best.compare_exchange_weak(cur, e)) {
        }
      }
      results[e] = std::move(res);
    }
  };
  const int threads = std::max(1, std::min(opt.threads, m));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (best.load() < m) return *results[best.load()];
  FeasibilityResult res;
  res.violation = results[0] ? results[0]->violation : std::nullopt;
  return res;
}

FeasibilityResult oracle_test_rr(const ClusteredGraph& cg, int cap, int threads) {
  const Graph& g = cg.graph();
  if (!is_connected(g)) throw Error(ErrorKind::BadParameter, "oracle needs a connected graph");
  (void)threads;  // the insertion search is fast enough single-threaded
  auto mask = all_masks(cg);
  std::optional<RotationSystem> found;
  for_each_planar_rotation(g, cap, [&](const RotationSystem& rs) {
    FaceSet fs = faces(rs);
    if (auto f = feasible_outer(rs, fs, mask)) {
      found = with_outer_face(rs, fs.faces[*f].front());
      return false;
    }
    return true;
  });
  if (found) {
    auto res = check_fixed_embedding(cg, *found);
    if (!res.feasible) throw Error(ErrorKind::Inconsistent, "oracle witness fails the fixed check");
    return res;
  }
  FeasibilityResult res;
  if (is_planar(g)) res.violation = check_fixed_embedding(cg, planar_embed(g)).violation;
  return res;
}

// ---------------------------------------------------------------------------
// rr drawings: hub-and-spoke routing inside faces.

std::map<std::pair<int, int>, long long> gamma_ledger(const ClusteredGraph& cg,
                                                      const RotationSystem& rs,
                                                      const std::vector<GammaRoute>& routes) {
  FaceSet fs = faces(rs);
  std::map<std::pair<int, int>, long long> ledger;
  for (size_t a = 0; a < routes.size(); ++a)
    for (size_t b = a + 1; b < routes.size(); ++b) {
      int ca = routes[a].cluster, cb = routes[b].cluster;
      if (cg.is_ancestor_or_self(ca, cb) || cg.is_ancestor_or_self(cb, ca)) continue;
      long long total = 0;
      for (auto& [f, va] : routes[a].hubs) {
        auto it = routes[b].hubs.find(f);
        if (it == routes[b].hubs.end()) continue;
        std::set<int> sa(va.begin(), va.end()), sb(it->second.begin(), it->second.end());
        std::vector<int> seq;
        for (int d : fs.faces[f]) {
          int x = rs.tail(d);
          if (sa.count(x)) seq.push_back(0);
          else if (sb.count(x)) seq.push_back(1);
        }
        int blocks = 0;
        for (size_t i = 0; i < seq.size(); ++i)
          if (i == 0 || seq[i] != seq[i - 1]) ++blocks;
        if (blocks > 1 && seq.front() == seq.back()) --blocks;
        total += std::max(0, blocks / 2 - 1);
      }
      auto key = std::minmax(ca, cb);
      ledger[{key.first, key.second}] += total;
    }
  return ledger;
}

GammaPlan construct_00c(const ClusteredGraph& cg, const RotationSystem& rs) {
  auto chk = check_fixed_embedding(cg, rs);
  if (!chk.feasible) {
    const auto& v = *chk.violation;
    throw Error(ErrorKind::InfeasibleEmbedding,
                "embedding is not feasible: cluster '" + cg.cluster_names()[v.cluster] + "', " +
                    v.condition);
  }
  FaceSet fs = faces(rs);
  GammaPlan plan;
  plan.embedding = rs;
  for (int mu = 1; mu < cg.cluster_count(); ++mu) {
    const auto& vs = cg.cluster_vertices(mu);
    std::vector<char> in = cg.cluster_mask(mu);
    std::vector<std::pair<int, std::vector<int>>> cand;
    for (int f = 0; f < fs.count(); ++f) {
      std::vector<int> on;
      for (int x : fs.vertices_of(rs, f))
        if (in[x]) on.push_back(x);
      if (on.size() >= 2) cand.emplace_back(f, on);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](const auto& a, const auto& b) {
      if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
      return (a.first == fs.outer) < (b.first == fs.outer);
    });
    UnionFind uf(rs.n);
    GammaRoute route;
    route.cluster = mu;
    for (auto& [f, on] : cand) {
      std::vector<int> spokes;
      int anchor = -1;
      for (int x : on) {
        if (anchor < 0) {
          anchor = x;
          spokes.push_back(x);
        } else if (uf.unite(anchor, x)) {
          spokes.push_back(x);
        }
      }
      if (spokes.size() >= 2) route.hubs[f] = spokes;
    }
    (void)vs;
    plan.routes.push_back(route);
  }
  plan.ledger = gamma_ledger(cg, rs, plan.routes);
  for (auto& [k, v] : plan.ledger) plan.gamma += v;
  return plan;
}

nlohmann::json to_json(const FeasibilityResult& r, const ClusteredGraph& cg) {
  const auto& vn = cg.vertex_names();
  nlohmann::json j;
  j["feasible"] = r.feasible;
  if (r.reference_edge >= 0 && r.feasible) {
    auto [a, b] = cg.edges()[r.reference_edge];
    j["reference_edge"] = {vn[a], vn[b]};
  }
  if (r.witness) j["embedding"] = embedding_to_json(*r.witness, vn);
  if (r.violation) {
    const auto& v = *r.violation;
    nlohmann::json w;
    w["cluster"] = v.cluster >= 0 ? nlohmann::json(cg.cluster_names()[v.cluster]) : nlohmann::json();
    w["condition"] = v.condition;
    if (!v.cycle.empty()) {
      w["cycle"] = nlohmann::json::array();
      for (int x : v.cycle) w["cycle"].push_back(vn[x]);
    }
    if (v.vertex >= 0) w["vertex"] = vn[v.vertex];
    if (!v.detail.empty()) w["detail"] = v.detail;
    j["violation"] = w;
  }
  return j;
}

nlohmann::json to_json(const GammaPlan& p, const ClusteredGraph& cg) {
  const auto& vn = cg.vertex_names();
  const auto& cn = cg.cluster_names();
  nlohmann::json j;
  j["mode"] = "rr";
  j["embedding"] = embedding_to_json(p.embedding, vn);
  j["routes"] = nlohmann::json::array();
  FaceSet fs = faces(p.embedding);
  for (const auto& r : p.routes) {
    nlohmann::json jr;
    jr["cluster"] = cn[r.cluster];
    jr["hubs"] = nlohmann::json::array();
    for (auto& [f, vs] : r.hubs) {
      nlohmann::json h;
      h["face"] = f;
      h["face_vertices"] = nlohmann::json::array();
      for (int x : fs.vertices_of(p.embedding, f)) h["face_vertices"].push_back(vn[x]);
      h["spokes"] = nlohmann::json::array();
      for (int x : vs) h["spokes"].push_back(vn[x]);
      jr["hubs"].push_back(h);
    }
    j["routes"].push_back(jr);
  }
  j["ledger"] = nlohmann::json::array();
  for (auto& [k, v] : p.ledger)
    if (v > 0) j["ledger"].push_back({{"clusters", {cn[k.first], cn[k.second]}}, {"crossings", v}});
  j["gamma"] = p.gamma;
  return j;
}

int default_threads() {
  if (const char* s = std::getenv("CGD_THREADS")) {
    int t = std::atoi(s);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace cgd
