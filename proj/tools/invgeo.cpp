#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invgeo/io.hpp"

using namespace invgeo;

namespace {

struct RunConfig {
  std::string subcommand;
  std::string family;
  std::string input;
  std::uint64_t scope = 8;
  std::vector<std::uint64_t> scales{1, 2};
  std::string weights = "unit";
  std::uint64_t cap = 100000;
  std::uint64_t seed = 1;
  std::string format = "json";
  double tolerance = 1e-9;
};

ojson config_json(const RunConfig& c) {
  ojson j;
  j["subcommand"] = c.subcommand;
  j["family"] = c.family;
  j["input"] = c.input;
  j["scope"] = c.scope;
  j["scales"] = c.scales;
  j["weights"] = c.weights;
  j["cap"] = c.cap;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["tolerance"] = c.tolerance;
  return j;
}

FamilyInstance load_family(const RunConfig& c) {
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw validation_error("cannot open input file: " + c.input);
    nlohmann::json j;
    in >> j;
    return make_family(j);
  }
  if (c.family.empty()) throw validation_error("need --family or --input");
  return make_family_shorthand(c.family);
}

// Default generating sets: the full symmetric inverse monoid from a cycle, a
// transposition and one corank-1 identity; p for bicyclic; x for fim1; the
// per-level generators (1, n) for group-chain products.
std::vector<Element> default_generators(const FamilyInstance& fam, std::uint64_t scope) {
  SemigroupOracle* o = fam.oracle.get();
  if (!fam.generators.empty()) return fam.generators;
  if (auto* im = dynamic_cast<SymmetricInverseMonoid*>(o)) {
    int n = im->ground_size();
    if (n == 1) return {im->identity(), im->zero()};
    std::vector<std::pair<int, int>> cyc, swp;
    for (int i = 1; i <= n; ++i) cyc.push_back({i, i % n + 1});
    swp.push_back({1, 2});
    swp.push_back({2, 1});
    for (int i = 3; i <= n; ++i) swp.push_back({i, i});
    std::vector<int> sub;
    for (int i = 1; i < n; ++i) sub.push_back(i);
    return {im->from_pairs(cyc), im->from_pairs(swp), im->partial_identity(sub)};
  }
  if (auto* b = dynamic_cast<BicyclicMonoid*>(o)) return {b->p(), b->q()};
  if (auto* f = dynamic_cast<FreeInverseMonoid1*>(o)) return {f->x()};
  if (auto* pr = dynamic_cast<GroupChainProduct*>(o)) {
    std::vector<Element> gens;
    for (std::uint64_t n = 0; n <= scope; ++n)
      for (int g = 1; g < pr->group().size(); ++g) gens.push_back(pr->pair(g, (std::int64_t)n));
    return gens;
  }
  if (auto* cs = dynamic_cast<ConcreteSemigroup*>(o)) {
    std::vector<Element> gens;
    for (int i = 0; i < cs->size(); ++i) gens.push_back(cs->at(i));
    return gens;
  }
  throw validation_error("no default generators for this family");
}

WeightedGenerators make_weighted(const RunConfig& c, const FamilyInstance& fam,
                                 const std::vector<Element>& gens) {
  WeightedGenerators w;
  w.oracle = fam.oracle.get();
  auto* pr = dynamic_cast<GroupChainProduct*>(fam.oracle.get());
  for (const Element& g : gens) {
    std::uint64_t weight = 1;
    if (c.weights == "level") {
      if (pr == nullptr)
        throw validation_error("--weights level only applies to group-chain products");
      std::uint64_t lvl = fam.oracle->scope_level(g);
      weight = lvl == 0 ? 1 : lvl;
    } else if (c.weights != "unit") {
      throw validation_error("unknown weights mode: " + c.weights);
    }
    w.add(g, weight);
  }
  w.close_under_inversion();
  return w;
}

// Scope element set plus the metric over it.
struct Workspace {
  FamilyInstance fam;
  std::vector<Element> elements;
  bool complete = false;
  WeightedGenerators gens;
  MetricTable metric;
};

Workspace build_workspace(const RunConfig& c) {
  Workspace ws;
  ws.fam = load_family(c);
  std::vector<Element> gens = default_generators(ws.fam, c.scope);
  ws.gens = make_weighted(c, ws.fam, gens);
  if (ws.fam.oracle->is_globally_finite() && ws.fam.generators.empty()) {
    auto fs = generate_closure(*ws.fam.oracle, gens, c.cap);
    ws.elements = fs.elements;
    ws.complete = fs.complete();
    ws.metric = metric_on_elements(*ws.fam.oracle, ws.gens, ws.elements,
                                   ws.complete ? ExtNat::infinity() : ExtNat(c.scope),
                                   ws.complete);
  } else if (!ws.fam.generators.empty()) {
    auto fs = generate_closure(*ws.fam.oracle, ws.fam.generators, c.cap);
    ws.elements = fs.elements;
    ws.complete = fs.complete();
    ws.metric = metric_on_elements(*ws.fam.oracle, ws.gens, ws.elements,
                                   ws.complete ? ExtNat::infinity() : ExtNat(c.scope),
                                   ws.complete);
  } else {
    ws.elements = ws.fam.oracle->scope_elements(c.scope);
    ws.complete = false;
    bool bounded_classes = dynamic_cast<BicyclicMonoid*>(ws.fam.oracle.get()) != nullptr;
    ws.metric = metric_on_elements(*ws.fam.oracle, ws.gens, ws.elements,
                                   bounded_classes ? ExtNat(c.scope) : ExtNat::infinity(), false,
                                   c.scope);
  }
  return ws;
}

int run_green(const RunConfig& c) {
  auto fam = load_family(c);
  std::vector<Element> gens =
      fam.generators.empty() ? default_generators(fam, c.scope) : fam.generators;
  auto fs = generate_closure(*fam.oracle, gens, c.cap);
  auto g = green_table(fs);
  ojson out;
  out["config"] = config_json(c);
  out["green"] = green_table_json(fs, g);
  auto cls = classify(fs);
  out["classification"] = cls.kind == SemigroupClass::Group        ? "Group"
                          : cls.kind == SemigroupClass::Semilattice ? "Semilattice"
                                                                    : "General";
  out["at_scale_warning"] = cls.at_scale_warning;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_graph(const RunConfig& c) {
  Workspace ws = build_workspace(c);
  Element base = ws.elements.front();
  for (const Element& e : ws.elements)
    if (!ws.fam.oracle->is_idempotent(e)) {
      base = e;
      break;
    }
  auto g = schuetzenberger_graph(*ws.fam.oracle, ws.gens, base, ExtNat(c.scope));
  if (c.format == "dot") {
    std::cout << digraph_dot(g);
    return 0;
  }
  ojson out;
  out["config"] = config_json(c);
  out["basepoint"] = key_json(base.key);
  out["vertices"] = g.vertices.size();
  out["edges"] = g.edges.size();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_metric(const RunConfig& c) {
  Workspace ws = build_workspace(c);
  if (c.format == "csv") {
    std::cout << metric_table_csv(ws.metric);
    return 0;
  }
  std::uint64_t r_max = c.scales.empty() ? 2 : c.scales.back();
  auto rep = validate_metric(ws.metric, r_max);
  ojson out;
  out["config"] = config_json(c);
  out["metric"] = metric_table_json(ws.metric);
  out["validation"] = validation_report_json(rep);
  std::cout << out.dump(2) << "\n";
  return rep.axioms_ok && rep.right_subinvariant ? 0 : 1;
}

int run_coarse(const RunConfig& c) {
  Workspace ws = build_workspace(c);
  auto asdim = asdim0_evidence(ws.metric, c.scales, &ws.gens);
  auto sparse = sparse_evidence(ws.metric, c.scales);
  auto trivial = coarse_triviality(ws.metric);
  ojson out;
  out["config"] = config_json(c);
  out["asdim0"] = coarse_verdict_json(asdim);
  out["sparse"] = coarse_verdict_json(sparse);
  ojson tv;
  tv["status"] = verdict_status_name(trivial.status);
  tv["trivial"] = trivial.trivial;
  tv["supremum"] = extnat_json(trivial.supremum);
  out["coarsely_trivial"] = std::move(tv);
  if (c.format == "csv") {
    for (std::uint64_t r : c.scales) std::cout << partition_csv(r_components(ws.metric, r));
    return 0;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_embed(const RunConfig& c, bool verify) {
  if (c.input.empty()) throw validation_error("embed: need --input (CSV matrix or JSON)");
  FiniteMetricSpace x;
  if (c.input.size() > 5 && c.input.substr(c.input.size() - 5) == ".json") {
    std::ifstream in(c.input);
    if (!in) throw validation_error("cannot open input file: " + c.input);
    nlohmann::json j;
    in >> j;
    x = metric_space_from_json(j);
  } else {
    std::ifstream in(c.input);
    if (!in) throw validation_error("cannot open input file: " + c.input);
    x = metric_space_from_csv(in);
  }
  auto emb = embed_space(x, 0);
  auto rep = verify_distortion(emb);
  if (c.format == "dot") {
    std::cout << union_graph_dot(emb);
    return verify && !rep.ok ? 1 : 0;
  }
  ojson out;
  out["config"] = config_json(c);
  out["generators"] = embedding_generators_json(emb);
  out["distortion"] = distortion_report_json(rep);
  std::cout << out.dump(2) << "\n";
  return verify && !rep.ok ? 1 : 0;
}

int run_roe(const RunConfig& c) {
  auto fam = load_family(c.family.empty() ? RunConfig{.family = "I3"} : c);
  std::vector<Element> gens = default_generators(fam, c.scope);
  auto fs = generate_closure(*fam.oracle, gens, c.cap);
  if (!fs.complete()) throw validation_error("roe: family closure exceeded cap");
  WeightedGenerators wg;
  wg.oracle = fam.oracle.get();
  for (const Element& g : gens) wg.add(g, 1);
  wg.close_under_inversion();
  auto d = closure_word_metric(fs, wg);

  std::vector<Element> idx = fs.elements;
  std::sort(idx.begin(), idx.end());
  BandOperator t = BandOperator::zero(idx, c.tolerance);
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw validation_error("cannot open input file: " + c.input);
    nlohmann::json j;
    in >> j;
    t = band_operator_from_json(j, *fam.oracle, c.tolerance);
  } else {
    // random band operator of propagation <= min(scope, 2), fully seeded
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uint64_t r = std::min<std::uint64_t>(c.scope, 2);
    for (int i = 0; i < t.n(); ++i)
      for (int j = 0; j < t.n(); ++j) {
        ExtNat dij = d.distance(t.indices[(std::size_t)j], t.indices[(std::size_t)i]);
        if (dij.is_finite() && dij.value() <= r && rng() % 4 == 0) t.at(i, j) = {u(rng), u(rng)};
      }
  }
  auto dec = decompose_band(t, fs, d);
  ojson out;
  out["config"] = config_json(c);
  out["propagation"] = extnat_json(propagation(t, d));
  out["decomposition"] = decomposition_json(dec);
  std::cout << out.dump(2) << "\n";
  return dec.residual_operator_norm <= c.tolerance ? 0 : 1;
}

int run_verify(const RunConfig& c) {
  ojson out;
  out["config"] = config_json(c);
  ojson checks = ojson::array();
  bool ok = true;
  auto record = [&](const std::string& name, bool pass) {
    ojson e;
    e["check"] = name;
    e["pass"] = pass;
    checks.push_back(std::move(e));
    ok = ok && pass;
  };

  {
    SymmetricInverseMonoid i3(3);
    auto fs = generate_closure(
        i3,
        {i3.from_pairs({{1, 2}, {2, 3}, {3, 1}}), i3.from_pairs({{1, 2}, {2, 1}, {3, 3}}),
         i3.partial_identity({1, 2})},
        c.cap);
    auto g = green_table(fs);
    record("i3_closure_34_elements", fs.size() == 34 && fs.complete());
    record("i3_four_d_classes", g.d_members.size() == 4);

    WeightedGenerators wg;
    wg.oracle = &i3;
    for (const Element& e : fs.elements) wg.add(e, 1);
    wg.close_under_inversion();
    auto d = closure_word_metric(fs, wg);
    auto l = length_from_metric(d);
    auto d2 = metric_from_length(l);
    bool roundtrip = true;
    for (auto& ct : d.classes)
      for (std::size_t i = 0; i < ct.members.size(); ++i)
        for (std::size_t j = 0; j < ct.members.size(); ++j)
          if (d2.distance(ct.members[i], ct.members[j]) != ct.dist[i][j]) roundtrip = false;
    record("prop_3_6_roundtrip_i3", roundtrip);
    auto rep = validate_metric(d, 1);
    record("i3_metric_valid", rep.axioms_ok && rep.right_subinvariant);
  }
  {
    FreeInverseMonoid1 f;
    WeightedGenerators wg;
    wg.add(f.x(), 1);
    wg.close_under_inversion();
    auto scope = f.scope_elements(c.scope);
    auto d = metric_on_elements(f, wg, scope, ExtNat::infinity(), false, c.scope);
    auto asdim = asdim0_evidence(d, c.scales, &wg);
    auto sparse = sparse_evidence(d, c.scales);
    record("fim1_asdim0_refuted", asdim.status == VerdictStatus::RefutedAtScale);
    record("fim1_sparse_consistent",
           sparse.status == VerdictStatus::EvidenceAtScale && sparse.holds);
  }
  {
    std::mt19937_64 rng(c.seed);
    bool all_ok = true;
    for (int t = 0; t < 5; ++t) {
      int n = 3 + (int)(rng() % 10);
      FiniteMetricSpace x;
      std::vector<std::vector<int>> dm((std::size_t)n, std::vector<int>((std::size_t)n, 0));
      std::uniform_int_distribution<int> u(1, 9);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dm[(std::size_t)i][(std::size_t)j] =
            dm[(std::size_t)j][(std::size_t)i] = u(rng);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            dm[(std::size_t)i][(std::size_t)j] =
                std::min(dm[(std::size_t)i][(std::size_t)j],
                         dm[(std::size_t)i][(std::size_t)k] + dm[(std::size_t)k][(std::size_t)j]);
      for (int i = 0; i < n; ++i) x.points.push_back("p" + std::to_string(i));
      x.dist = dm;
      auto emb = embed_space(x, 0);
      if (!verify_distortion(emb).ok) all_ok = false;
    }
    record("embedding_distortion", all_ok);
  }
  out["checks"] = std::move(checks);
  out["ok"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarse geometry of inverse semigroups"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string scales_csv = "1,2";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "family shorthand (I3, bicyclic, fim1, z2chain)");
    sub->add_option("--input", cfg.input, "input file (descriptor, space, or operator)");
    sub->add_option("--scope", cfg.scope, "truncation depth / ball radius");
    sub->add_option("--scales", scales_csv, "comma-separated scales");
    sub->add_option("--weights", cfg.weights, "unit | level");
    sub->add_option("--cap", cfg.cap, "closure cap");
    sub->add_option("--seed", cfg.seed, "seed for randomized inputs");
    sub->add_option("--format", cfg.format, "json | csv | dot");
    sub->add_option("--tolerance", cfg.tolerance, "numeric tolerance");
  };
  auto* green = app.add_subcommand("green", "Green-class table of a closure");
  auto* graph = app.add_subcommand("graph", "Schuetzenberger graph ball");
  auto* metric = app.add_subcommand("metric", "word metric table plus validation");
  auto* coarse = app.add_subcommand("coarse", "r-components and coarse verdicts");
  auto* embed = app.add_subcommand("embed", "metric space embedding");
  bool embed_verify = false;
  embed->add_flag("--verify", embed_verify, "check the distortion bounds");
  auto* roe = app.add_subcommand("roe", "band operator decomposition");
  auto* verify = app.add_subcommand("verify", "condensed property suite");
  for (CLI::App* s : {green, graph, metric, coarse, embed, roe, verify}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.scales.clear();
  {
    std::stringstream ss(scales_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) cfg.scales.push_back((std::uint64_t)std::stoull(tok));
  }

  try {
    if (green->parsed()) {
      cfg.subcommand = "green";
      return run_green(cfg);
    }
    if (graph->parsed()) {
      cfg.subcommand = "graph";
      return run_graph(cfg);
    }
    if (metric->parsed()) {
      cfg.subcommand = "metric";
      return run_metric(cfg);
    }
    if (coarse->parsed()) {
      cfg.subcommand = "coarse";
      return run_coarse(cfg);
    }
    if (embed->parsed()) {
      cfg.subcommand = "embed";
      return run_embed(cfg, embed_verify);
    }
    if (roe->parsed()) {
      cfg.subcommand = "roe";
      return run_roe(cfg);
    }
    cfg.subcommand = "verify";
    return run_verify(cfg);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
