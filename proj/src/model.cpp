#include "cgd/model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cgd/embedding.hpp"
#include "cgd/error.hpp"

namespace cgd {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_';
  });
}

std::string at_line(int line) {
  return line > 0 ? " (line " + std::to_string(line) + ")" : std::string();
}

}  // namespace

bool ClusteredGraph::is_ancestor_or_self(int a, int b) const {
  if (depth_[a] > depth_[b]) return false;
  while (depth_[b] > depth_[a]) b = cluster_parent_[b];
  return a == b;
}

std::vector<char> ClusteredGraph::cluster_mask(int c) const {
  std::vector<char> mask(vertex_count(), 0);
  for (int v : cluster_vertices_[c]) mask[v] = 1;
  return mask;
}

std::optional<int> ClusteredGraph::find_vertex(const std::string& name) const {
  auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), name);
  if (it == vertex_names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - vertex_names_.begin());
}

std::optional<int> ClusteredGraph::find_cluster(const std::string& name) const {
  if (name == "root") return kRoot;
  auto it = std::lower_bound(cluster_names_.begin() + 1, cluster_names_.end(), name);
  if (it == cluster_names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - cluster_names_.begin());
}

bool operator==(const ClusteredGraph& a, const ClusteredGraph& b) {
  return a.vertex_names_ == b.vertex_names_ && a.cluster_names_ == b.cluster_names_ &&
         a.edges_ == b.edges_ && a.cluster_parent_ == b.cluster_parent_ &&
         a.membership_ == b.membership_;
}

ClusteredGraphBuilder& ClusteredGraphBuilder::vertex(const std::string& name) {
  vertices_.push_back(name);
  vertex_lines_.push_back(line_);
  return *this;
}

ClusteredGraphBuilder& ClusteredGraphBuilder::edge(const std::string& a, const std::string& b) {
  edges_.emplace_back(a, b);
  edge_lines_.push_back(line_);
  return *this;
}

ClusteredGraphBuilder& ClusteredGraphBuilder::cluster(const std::string& name,
                                                      const std::string& parent) {
  clusters_.emplace_back(name, parent);
  cluster_lines_.push_back(line_);
  return *this;
}

ClusteredGraphBuilder& ClusteredGraphBuilder::member(const std::string& vertex,
                                                     const std::string& cluster) {
  members_.emplace_back(vertex, cluster);
  member_lines_.push_back(line_);
  return *this;
}

ClusteredGraph ClusteredGraphBuilder::build() const {
  ClusteredGraph cg;

  std::vector<std::string> vnames = vertices_;
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (!valid_identifier(vertices_[i]))
      throw Error(ErrorKind::Syntax, "invalid vertex identifier '" + vertices_[i] + "'" +
                                         at_line(vertex_lines_[i]));
  std::sort(vnames.begin(), vnames.end());
  for (size_t i = 1; i < vnames.size(); ++i)
    if (vnames[i] == vnames[i - 1])
      throw Error(ErrorKind::Syntax, "duplicate vertex '" + vnames[i] + "'");
  cg.vertex_names_ = vnames;

  std::vector<std::string> cnames;
  for (size_t i = 0; i < clusters_.size(); ++i) {
    const auto& [name, parent] = clusters_[i];
    if (!valid_identifier(name) || !valid_identifier(parent))
      throw Error(ErrorKind::Syntax, "invalid cluster identifier" + at_line(cluster_lines_[i]));
    if (name == "root")
      throw Error(ErrorKind::Syntax, "cluster id 'root' is reserved" + at_line(cluster_lines_[i]));
    cnames.push_back(name);
  }
  std::sort(cnames.begin(), cnames.end());
  for (size_t i = 1; i < cnames.size(); ++i)
    if (cnames[i] == cnames[i - 1])
      throw Error(ErrorKind::Syntax, "duplicate cluster '" + cnames[i] + "'");
  cg.cluster_names_.push_back("root");
  cg.cluster_names_.insert(cg.cluster_names_.end(), cnames.begin(), cnames.end());

  const int n = cg.vertex_count();
  const int k = cg.cluster_count();

  cg.cluster_parent_.assign(k, -1);
  for (size_t i = 0; i < clusters_.size(); ++i) {
    const auto& [name, parent] = clusters_[i];
    int c = *cg.find_cluster(name);
    auto p = cg.find_cluster(parent);
    if (!p)
      throw Error(ErrorKind::UnknownIdentifier,
                  "unknown parent cluster '" + parent + "'" + at_line(cluster_lines_[i]));
    cg.cluster_parent_[c] = *p;
  }
  // Every cluster must reach the root without revisiting a cluster.
  cg.depth_.assign(k, -1);
  cg.depth_[ClusteredGraph::kRoot] = 0;
  for (int c = 1; c < k; ++c) {
    std::vector<int> chain;
    int cur = c;
    while (cg.depth_[cur] < 0) {
      chain.push_back(cur);
      cur = cg.cluster_parent_[cur];
      if (static_cast<int>(chain.size()) > k)
        throw Error(ErrorKind::NotATree,
                    "cluster hierarchy is not a tree (cycle through '" + cg.cluster_names_[c] + "')");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      cg.depth_[*it] = cg.depth_[cg.cluster_parent_[*it]] + 1;
  }
  cg.cluster_children_.assign(k, {});
  for (int c = 1; c < k; ++c) cg.cluster_children_[cg.cluster_parent_[c]].push_back(c);

  cg.membership_.assign(n, -1);
  for (size_t i = 0; i < members_.size(); ++i) {
    const auto& [vname, cname] = members_[i];
    auto v = cg.find_vertex(vname);
    if (!v)
      throw Error(ErrorKind::UnknownIdentifier,
                  "unknown vertex '" + vname + "'" + at_line(member_lines_[i]));
    auto c = cg.find_cluster(cname);
    if (!c)
      throw Error(ErrorKind::UnknownIdentifier,
                  "unknown cluster '" + cname + "'" + at_line(member_lines_[i]));
    if (cg.membership_[*v] != -1)
      throw Error(ErrorKind::DuplicateMembership,
                  "duplicate membership for vertex '" + vname + "'" + at_line(member_lines_[i]));
    cg.membership_[*v] = *c;
  }
  for (int v = 0; v < n; ++v)
    if (cg.membership_[v] == -1)
      throw Error(ErrorKind::MissingMembership,
                  "vertex without cluster membership: '" + cg.vertex_names_[v] + "'");

  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& [a, b] = edges_[i];
    auto u = cg.find_vertex(a);
    auto v = cg.find_vertex(b);
    if (!u || !v)
      throw Error(ErrorKind::UnknownIdentifier,
                  "edge references unknown vertex '" + (!u ? a : b) + "'" + at_line(edge_lines_[i]));
    if (*u == *v)
      throw Error(ErrorKind::Syntax, "self-loop at '" + a + "'" + at_line(edge_lines_[i]));
    auto key = std::minmax(*u, *v);
    if (!seen.insert(key).second)
      throw Error(ErrorKind::Syntax,
                  "duplicate edge '" + a + " " + b + "'" + at_line(edge_lines_[i]));
  }
  cg.edges_.assign(seen.begin(), seen.end());
  cg.graph_ = Graph(n, cg.edges_);

  cg.cluster_vertices_.assign(k, {});
  for (int v = 0; v < n; ++v)
    for (int c = cg.membership_[v]; c != -1; c = cg.cluster_parent_[c])
      cg.cluster_vertices_[c].push_back(v);
  for (int c = 1; c < k; ++c)
    if (cg.cluster_vertices_[c].empty())
      throw Error(ErrorKind::NotATree, "cluster '" + cg.cluster_names_[c] + "' contains no vertices");
  return cg;
}

ClusteredGraph parse_clustered_graph(std::istream& in) {
  ClusteredGraphBuilder builder;
  std::string raw;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    builder.line_ = line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> t;
    for (std::string tok; tokens >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    auto syntax = [&](const std::string& what) {
      return Error(ErrorKind::Syntax, "syntax error at line " + std::to_string(line_no) + ": " + what);
    };
    if (!header) {
      if (t.size() != 2 || t[0] != "cg") throw syntax("expected header 'cg 1'");
      if (t[1] != "1") throw syntax("unsupported format version '" + t[1] + "'");
      header = true;
      continue;
    }
    const std::string& kw = t[0];
    auto expect = [&](size_t count) {
      if (t.size() != count)
        throw syntax("'" + kw + "' expects " + std::to_string(count - 1) + " argument(s)");
      for (size_t i = 1; i < t.size(); ++i)
        if (!valid_identifier(t[i])) throw syntax("invalid identifier '" + t[i] + "'");
    };
    if (kw == "v") {
      expect(2);
      builder.vertex(t[1]);
    } else if (kw == "e") {
      expect(3);
      builder.edge(t[1], t[2]);
    } else if (kw == "c") {
      expect(3);
      builder.cluster(t[1], t[2]);
    } else if (kw == "m") {
      expect(3);
      builder.member(t[1], t[2]);
    } else {
      throw syntax("unknown record '" + kw + "'");
    }
  }
  if (!header) throw Error(ErrorKind::Syntax, "syntax error at line 1: missing header 'cg 1'");
  return builder.build();
}

ClusteredGraph parse_clustered_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_clustered_graph(in);
}

ClusteredGraph load_clustered_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_clustered_graph(in);
}

std::string serialize(const ClusteredGraph& cg) {
  std::ostringstream out;
  out << "cg 1\n";
  const auto& vn = cg.vertex_names();
  const auto& cn = cg.cluster_names();
  for (const auto& v : vn) out << "v " << v << '\n';
  for (auto [u, v] : cg.edges()) out << "e " << vn[u] << ' ' << vn[v] << '\n';
  for (int c = 1; c < cg.cluster_count(); ++c)
    out << "c " << cn[c] << ' ' << cn[cg.cluster_parent(c)] << '\n';
  for (int v = 0; v < cg.vertex_count(); ++v)
    out << "m " << vn[v] << ' ' << cn[cg.membership(v)] << '\n';
  return out.str();
}

bool is_c_connected(const ClusteredGraph& cg) {
  for (int c = 0; c < cg.cluster_count(); ++c)
    if (!induced_connected(cg.graph(), cg.cluster_mask(c))) return false;
  return true;
}

bool is_flat(const ClusteredGraph& cg) {
  for (int c = 1; c < cg.cluster_count(); ++c)
    if (!cg.cluster_children(c).empty()) return false;
  return true;
}

ValidationReport validate(const ClusteredGraph& cg) {
  ValidationReport r;
  r.is_planar = is_planar(cg.graph());
  if (!r.is_planar) r.violations.push_back("underlying graph is not planar");
  r.is_flat = true;
  for (int c = 1; c < cg.cluster_count(); ++c) {
    if (!cg.cluster_children(c).empty()) {
      r.is_flat = false;
      r.violations.push_back("cluster '" + cg.cluster_names()[c] + "' has child clusters (not flat)");
    }
  }
  r.is_c_connected = true;
  for (int c = 0; c < cg.cluster_count(); ++c) {
    if (!induced_connected(cg.graph(), cg.cluster_mask(c))) {
      r.is_c_connected = false;
      r.violations.push_back("cluster '" + cg.cluster_names()[c] + "' induces a disconnected subgraph");
    }
  }
  r.is_biconnected = is_biconnected(cg.graph());
  if (!r.is_biconnected) r.violations.push_back("underlying graph is not biconnected");
  return r;
}

ClusterSubgraph cluster_subgraph(const ClusteredGraph& cg, int cluster) {
  if (cluster < 0 || cluster >= cg.cluster_count())
    throw Error(ErrorKind::UnknownIdentifier, "unknown cluster index " + std::to_string(cluster));
  ClusterSubgraph sub;
  sub.vertices = cg.cluster_vertices(cluster);
  auto mask = cg.cluster_mask(cluster);
  for (int e = 0; e < cg.edge_count(); ++e) {
    auto [u, v] = cg.edges()[e];
    if (mask[u] && mask[v]) {
      sub.edges.emplace_back(u, v);
      sub.edge_ids.push_back(e);
    }
  }
  return sub;
}

ClusterSubgraph cluster_subgraph(const ClusteredGraph& cg, const std::string& cluster) {
  auto c = cg.find_cluster(cluster);
  if (!c) throw Error(ErrorKind::UnknownIdentifier, "unknown cluster '" + cluster + "'");
  return cluster_subgraph(cg, *c);
}

}  // namespace cgd
