// cgd: command-line front end.
// Exit codes: 0 success/feasible, 1 well-formed negative, 2 usage or I/O.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cgd/draw.hpp"
#include "cgd/embedding.hpp"
#include "cgd/error.hpp"
#include "cgd/generators.hpp"
#include "cgd/model.hpp"
#include "cgd/rr.hpp"
#include "cgd/spqr.hpp"

using namespace cgd;
using nlohmann::json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A negative answer that still prints its payload.
struct Negative {
  json payload;
  std::string summary;
};

ClusteredGraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  try {
    return parse_clustered_graph(in);
  } catch (const Error& e) {
    throw Usage(path + ": " + e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Usage(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Usage("cannot write " + path);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_file(out_path, j.dump(2) + "\n");
}

json report_json(const ValidationReport& r) {
  return {{"is_planar", r.is_planar},
          {"is_c_connected", r.is_c_connected},
          {"is_flat", r.is_flat},
          {"is_biconnected", r.is_biconnected},
          {"violations", r.violations}};
}

int cmd_validate(const std::string& file) {
  auto cg = load(file);
  auto r = validate(cg);
  std::cout << report_json(r).dump(2) << "\n";
  std::cerr << (r.violations.empty() ? "valid" : "violations: " + std::to_string(r.violations.size()))
            << "\n";
  return r.violations.empty() ? 0 : 1;
}

int cmd_test_rr(const std::string& file, bool oracle, int cap) {
  auto cg = load(file);
  FeasibilityResult r;
  if (oracle) {
    r = oracle_test_rr(cg, cap, default_threads());
  } else {
    RrOptions opt;
    opt.threads = default_threads();
    r = test_rr_biconnected(cg, opt);
  }
  std::cout << to_json(r, cg).dump(2) << "\n";
  std::cerr << (r.feasible ? "feasible" : "infeasible") << "\n";
  return r.feasible ? 0 : 1;
}

int cmd_draw(const std::string& mode, const std::string& file, const std::string& emb_path,
             const std::string& out, const std::string& svg) {
  auto cg = load(file);
  std::optional<RotationSystem> given;
  if (!emb_path.empty()) {
    try {
      given = embedding_from_json(load_json(emb_path), cg.graph(), cg.vertex_names());
    } catch (const Error& e) {
      throw Usage(emb_path + ": " + e.what());
    }
  }
  json plan;
  std::string picture;
  if (mode == "ee") {
    auto [d, rep] = construct_a00(cg);
    plan = to_json(d, rep, cg);
    picture = svg_of(d, cg);
    std::cerr << "alpha = " << rep.alpha << "\n";
  } else if (mode == "er") {
    auto p = given ? construct_0b0(cg, *given) : construct_0b0(cg);
    plan = to_json(p, cg);
    picture = svg_of(p, cg);
    std::cerr << "beta = " << p.beta << "\n";
  } else if (mode == "rr") {
    RotationSystem rs;
    if (given) {
      rs = *given;
    } else {
      RrOptions opt;
      opt.threads = default_threads();
      auto r = test_rr_biconnected(cg, opt);
      if (!r.feasible) throw Negative{to_json(r, cg), "infeasible: no region-region drawing"};
      rs = *r.witness;
    }
    auto p = construct_00c(cg, rs);
    plan = to_json(p, cg);
    plan["instance"] = serialize(cg);
    picture = svg_of(p, cg);
    std::cerr << "gamma = " << p.gamma << "\n";
  } else {
    throw Usage("unknown mode '" + mode + "'");
  }
  emit(plan, out);
  if (!svg.empty()) write_file(svg, picture);
  return 0;
}

int cmd_count(const std::string& file) {
  json j = load_json(file);
  if (!j.contains("instance") || !j.contains("mode")) throw Usage(file + ": not a plan");
  ClusteredGraph cg;
  try {
    cg = parse_clustered_graph(j["instance"].get<std::string>());
  } catch (const Error& e) {
    throw Usage(file + ": " + e.what());
  }
  const std::string mode = j["mode"];
  json res{{"mode", mode}};
  bool ok = true;
  if (mode == "ee") {
    auto rep = count_crossings_geometric(drawing_from_json(j, cg));
    const auto& stored = j.at("report");
    res["alpha"] = rep.alpha;
    res["beta"] = rep.beta;
    res["gamma"] = rep.gamma;
    ok = rep.alpha == stored.at("alpha").get<long long>() &&
         rep.beta == stored.at("beta").get<long long>() &&
         rep.gamma == stored.at("gamma").get<long long>();
  } else if (mode == "er") {
    auto p = beta_plan_from_json(j, cg);
    long long sum = 0, recomputed = 0;
    for (auto& [k, v] : p.ledger) sum += v;
    auto fresh = beta_ledger(cg, p.tree, p.routes);
    for (auto& [k, v] : fresh) recomputed += v;
    res["beta"] = recomputed;
    ok = sum == p.beta && recomputed == p.beta && fresh == p.ledger;
  } else if (mode == "rr") {
    auto rs = embedding_from_json(j.at("embedding"), cg.graph(), cg.vertex_names());
    std::vector<GammaRoute> routes;
    for (const auto& jr : j.at("routes")) {
      GammaRoute r;
      r.cluster = *cg.find_cluster(jr.at("cluster").get<std::string>());
      for (const auto& h : jr.at("hubs")) {
        auto& spokes = r.hubs[h.at("face").get<int>()];
        for (const auto& v : h.at("spokes")) spokes.push_back(*cg.find_vertex(v.get<std::string>()));
      }
      routes.push_back(r);
    }
    long long sum = 0, recomputed = 0;
    for (const auto& it : j.at("ledger")) sum += it.at("crossings").get<long long>();
    for (auto& [k, v] : gamma_ledger(cg, rs, routes)) recomputed += v;
    res["gamma"] = recomputed;
    ok = sum == j.at("gamma").get<long long>() && recomputed == sum;
  } else {
    throw Usage("unknown plan mode '" + mode + "'");
  }
  res["consistent"] = ok;
  std::cout << res.dump(2) << "\n";
  std::cerr << (ok ? "ledger consistent" : "ledger mismatch") << "\n";
  return ok ? 0 : 1;
}

int cmd_gen(const std::string& family, int n, std::uint64_t seed, const std::string& out) {
  ClusteredGraph cg;
  try {
    cg = gen(family, n, seed);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
  if (out.empty())
    std::cout << serialize(cg);
  else
    write_file(out, serialize(cg));
  std::cerr << family << ": " << cg.vertex_count() << " vertices, " << cg.edge_count() << " edges, "
            << cg.cluster_count() - 1 << " clusters\n";
  return 0;
}

int edge_index(const ClusteredGraph& cg, const std::string& ref) {
  auto comma = ref.find(',');
  if (comma == std::string::npos) {
    int e = -1;
    std::istringstream in(ref);
    if (!(in >> e) || e < 0 || e >= cg.edge_count()) throw Usage("bad edge '" + ref + "'");
    return e;
  }
  auto a = cg.find_vertex(ref.substr(0, comma));
  auto b = cg.find_vertex(ref.substr(comma + 1));
  int e = a && b ? cg.find_edge(*a, *b) : -1;
  if (e < 0) throw Usage("no edge '" + ref + "'");
  return e;
}

int cmd_spqr(const std::string& file, const std::string& ref) {
  auto cg = load(file);
  auto t = build_spqr(cg.graph(), edge_index(cg, ref));
  std::cout << spqr_to_json(t, cg.vertex_names()).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed clustered planarity: drawings with one kind of crossing"};
  app.require_subcommand(1);

  std::string file, mode, emb, out, svg, family, ref;
  bool oracle = false;
  int cap = 8, n = 0;
  std::uint64_t seed = 1;

  auto* v = app.add_subcommand("validate", "structural flags of a .cg file");
  v->add_option("file", file)->required();

  auto* t = app.add_subcommand("test-rr", "decide whether a region-region-only drawing exists");
  t->add_option("file", file)->required();
  t->add_flag("--oracle", oracle, "exhaustive search over embeddings instead");
  t->add_option("--cap", cap, "oracle vertex limit");

  auto* d = app.add_subcommand("draw", "build a drawing plan");
  d->add_option("--mode", mode)->required()->check(CLI::IsMember({"ee", "er", "rr"}));
  d->add_option("file", file)->required();
  d->add_option("--embedding", emb, "embedding JSON to use");
  d->add_option("--out", out, "plan JSON (default: stdout)");
  d->add_option("--svg", svg, "SVG picture");

  auto* c = app.add_subcommand("count", "recompute the totals of a plan");
  c->add_option("plan", file)->required();

  auto* g = app.add_subcommand("gen", "generate an instance family");
  g->add_option("family", family)->required()->check(CLI::IsMember(family_names()));
  g->add_option("--n", n);
  g->add_option("--seed", seed);
  g->add_option("--out", out);

  auto* s = app.add_subcommand("spqr", "SPQR-tree tools");
  auto* dump = s->add_subcommand("dump", "print the tree rooted at an edge");
  dump->add_option("file", file)->required();
  dump->add_option("--ref", ref, "edge index or 'u,v'")->required();
  s->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*v) return cmd_validate(file);
    if (*t) return cmd_test_rr(file, oracle, cap);
    if (*d) return cmd_draw(mode, file, emb, out, svg);
    if (*c) return cmd_count(file);
    if (*g) return cmd_gen(family, n, seed, out);
    if (*dump) return cmd_spqr(file, ref);
  } catch (const Negative& neg) {
    std::cout << neg.payload.dump(2) << "\n";
    std::cerr << neg.summary << "\n";
    return 1;
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // Library refusals on a readable instance (not planar, not
    // biconnected, over the cap, ...) are negative answers.
    std::cout << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
