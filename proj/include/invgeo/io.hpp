#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "invgeo/closure.hpp"
#include "invgeo/coarse.hpp"
#include "invgeo/embed.hpp"
#include "invgeo/family.hpp"
#include "invgeo/metric.hpp"
#include "invgeo/roe.hpp"

namespace invgeo {

using ojson = nlohmann::ordered_json;

inline ojson key_json(const Key& k) {
  ojson a = ojson::array();
  for (auto v : k) a.push_back(v);
  return a;
}

inline ojson extnat_json(ExtNat v) {
  if (v.is_finite()) return ojson(v.value());
  return ojson("inf");
}

inline const char* witness_status_name(WitnessStatus s) {
  return s == WitnessStatus::Found ? "Found" : "NotFoundAtScale";
}

inline const char* verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Established:
      return "Established";
    case VerdictStatus::RefutedAtScale:
      return "RefutedAtScale";
    default:
      return "EvidenceAtScale";
  }
}

inline const char* property_tag_name(PropertyTag t) {
  switch (t) {
    case PropertyTag::AsDim0:
      return "AsDim0";
    case PropertyTag::Sparse:
      return "Sparse";
    case PropertyTag::LocallyFinite:
      return "LocallyFinite";
    case PropertyTag::LocallyLFinite:
      return "LocallyLFinite";
    default:
      return "CoarselyTrivial";
  }
}

// ---------------------------------------------------------------------------
// Semigroups
// ---------------------------------------------------------------------------
inline ojson semigroup_json(const FiniteSemigroup& s) {
  ojson j;
  j["version"] = 1;
  j["status"] = s.complete() ? "Complete" : "Truncated";
  ojson elems = ojson::array();
  for (auto& e : s.elements) elems.push_back(key_json(e.key));
  j["elements"] = std::move(elems);
  j["product"] = s.product;
  j["inverse"] = s.inverse;
  return j;
}

inline std::shared_ptr<ConcreteSemigroup> concrete_from_json(const nlohmann::json& j) {
  return detail::concrete_from_json(j, "concrete");
}

inline ojson green_table_json(const FiniteSemigroup& s, const GreenTable& g) {
  ojson j;
  j["size"] = s.size();
  ojson per = ojson::array();
  for (int i = 0; i < s.size(); ++i) {
    ojson row;
    row["key"] = key_json(s.elements[(std::size_t)i].key);
    row["L"] = g.l_class[(std::size_t)i];
    row["R"] = g.r_class[(std::size_t)i];
    row["D"] = g.d_class[(std::size_t)i];
    per.push_back(std::move(row));
  }
  j["elements"] = std::move(per);
  j["l_classes"] = g.l_members.size();
  j["r_classes"] = g.r_members.size();
  j["d_classes"] = g.d_members.size();
  return j;
}

// ---------------------------------------------------------------------------
// Metric tables
// ---------------------------------------------------------------------------
inline ojson metric_table_json(const MetricTable& d) {
  ojson j;
  j["scope"] = d.complete ? "Complete" : "Truncated";
  j["radius"] = extnat_json(d.radius);
  j["scope_depth"] = d.scope_depth;
  ojson classes = ojson::array();
  for (auto& ct : d.classes) {
    ojson c;
    c["class_key"] = key_json(ct.class_key);
    ojson members = ojson::array();
    for (auto& m : ct.members) members.push_back(key_json(m.key));
    c["members"] = std::move(members);
    ojson rows = ojson::array();
    for (auto& row : ct.dist) {
      ojson r = ojson::array();
      for (ExtNat v : row) r.push_back(extnat_json(v));
      rows.push_back(std::move(r));
    }
    c["dist"] = std::move(rows);
    ojson fw = ojson::array();
    for (ExtNat v : ct.frontier_weight) fw.push_back(extnat_json(v));
    c["frontier_weight"] = std::move(fw);
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  return j;
}

inline std::string metric_table_csv(const MetricTable& d) {
  std::ostringstream out;
  std::vector<Element> all;
  for (auto& ct : d.classes)
    for (auto& m : ct.members) all.push_back(m);
  std::sort(all.begin(), all.end());
  out << "key";
  for (auto& e : all) out << ',' << key_to_string(e.key);
  out << '\n';
  for (auto& a : all) {
    out << key_to_string(a.key);
    for (auto& b : all) out << ',' << d.distance(a, b).to_string();
    out << '\n';
  }
  return out.str();
}

inline ojson length_function_json(const LengthFunction& l) {
  ojson j;
  j["scope"] = l.complete ? "Complete" : "Truncated";
  ojson vals = ojson::array();
  for (auto& [e, v] : l.values) {
    ojson row;
    row["key"] = key_json(e.key);
    row["length"] = v;
    vals.push_back(std::move(row));
  }
  j["values"] = std::move(vals);
  ojson missing = ojson::array();
  for (auto& e : l.scope_exceeded) missing.push_back(key_json(e.key));
  j["scope_exceeded"] = std::move(missing);
  return j;
}

inline ojson validation_report_json(const ValidationReport& r) {
  ojson j;
  j["axioms_ok"] = r.axioms_ok;
  j["axiom_failures"] = r.axiom_failures;
  j["right_subinvariant"] = r.right_subinvariant;
  j["subinvariance_failures"] = r.subinvariance_failures;
  ojson ws = ojson::array();
  for (auto& w : r.witnesses) {
    ojson e;
    e["r"] = w.r;
    e["status"] = witness_status_name(w.status);
    ojson members = ojson::array();
    for (auto& m : w.witness) members.push_back(key_json(m.key));
    e["witness"] = std::move(members);
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);
  return j;
}

inline std::string digraph_dot(const LabeledDigraph& g, const std::string& name = "schuetzenberger") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    out << "  v" << i << " [label=\"" << key_to_string(g.vertices[i].key) << "\"];\n";
  for (auto& e : g.edges) {
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << key_to_string(e.label) << " w"
        << e.weight << "\"";
    if (e.idempotent_loop) out << " style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Coarse verdicts
// ---------------------------------------------------------------------------
inline ojson coarse_verdict_json(const CoarseVerdict& v) {
  ojson j;
  j["property"] = property_tag_name(v.property);
  j["status"] = verdict_status_name(v.status);
  j["holds"] = v.holds;
  j["scope"] = v.scope;
  ojson w = ojson::array();
  for (auto& e : v.witness) w.push_back(key_json(e.key));
  j["witness"] = std::move(w);
  j["witness_scale"] = v.witness_scale;
  ojson stats = ojson::array();
  for (auto& [k, val] : v.statistics) {
    ojson s;
    s["name"] = k;
    s["value"] = val;
    stats.push_back(std::move(s));
  }
  j["statistics"] = std::move(stats);
  return j;
}

inline std::string partition_csv(const RComponentPartition& p) {
  std::ostringstream out;
  out << "key,block,block_size\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (auto& m : p.blocks[b].members)
      out << key_to_string(m.key) << ',' << b << ',' << p.blocks[b].members.size() << '\n';
  return out.str();
}

inline ojson coarse_profile_json(const CoarseProfile& p) {
  ojson j;
  ojson lo = ojson::array(), hi = ojson::array();
  for (auto& [r, v] : p.rho_minus) {
    ojson e;
    e["r"] = r;
    e["value"] = extnat_json(v);
    lo.push_back(std::move(e));
  }
  for (auto& [r, v] : p.rho_plus) {
    ojson e;
    e["r"] = r;
    e["value"] = extnat_json(v);
    hi.push_back(std::move(e));
  }
  j["rho_minus"] = std::move(lo);
  j["rho_plus"] = std::move(hi);
  j["sandwich_ok"] = p.sandwich_ok;
  j["failures"] = p.failures;
  return j;
}

// ---------------------------------------------------------------------------
// Metric spaces and embeddings
// ---------------------------------------------------------------------------
// CSV: one row per point, comma-separated integer distances. JSON: either
// {"points": [names], "dist": [[..]]} or {"points": [names],
// "edges": [[i, j, d], ...]} completed by shortest paths.
inline FiniteMetricSpace metric_space_from_csv(std::istream& in) {
  FiniteMetricSpace x;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stoi(cell));
    x.dist.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < x.dist.size(); ++i) x.points.push_back("p" + std::to_string(i));
  x.validate();
  return x;
}

inline FiniteMetricSpace metric_space_from_json(const nlohmann::json& j) {
  FiniteMetricSpace x;
  if (j.contains("points"))
    for (auto& p : j.at("points")) x.points.push_back(p.get<std::string>());
  if (j.contains("dist")) {
    x.dist = j.at("dist").get<std::vector<std::vector<int>>>();
    if (x.points.empty())
      for (std::size_t i = 0; i < x.dist.size(); ++i) x.points.push_back("p" + std::to_string(i));
  } else if (j.contains("edges")) {
    int n = (int)x.points.size();
    const int big = 1 << 28;
    x.dist.assign((std::size_t)n, std::vector<int>((std::size_t)n, big));
    for (int i = 0; i < n; ++i) x.dist[(std::size_t)i][(std::size_t)i] = 0;
    for (auto& e : j.at("edges")) {
      int a = e[0].get<int>(), b = e[1].get<int>(), d = e[2].get<int>();
      x.dist[(std::size_t)a][(std::size_t)b] = std::min(x.dist[(std::size_t)a][(std::size_t)b], d);
      x.dist[(std::size_t)b][(std::size_t)a] = x.dist[(std::size_t)a][(std::size_t)b];
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
          x.dist[(std::size_t)i][(std::size_t)jj] =
              std::min(x.dist[(std::size_t)i][(std::size_t)jj],
                       x.dist[(std::size_t)i][(std::size_t)k] + x.dist[(std::size_t)k][(std::size_t)jj]);
  } else {
    throw validation_error("metric space json: need 'dist' or 'edges'");
  }
  x.validate();
  return x;
}

// Involution generators in the PartialBijection import format.
inline ojson embedding_generators_json(const EmbeddingResult& e) {
  ojson j;
  j["ground_size"] = e.space.size();
  j["basepoint"] = e.basepoint;
  ojson gens = ojson::array();
  for (auto& [g, w] : e.generators.items) {
    ojson entry;
    ojson pairs = ojson::array();
    for (std::size_t i = 0; i + 1 < g.key.size(); i += 2)
      pairs.push_back(ojson::array({g.key[i], g.key[i + 1]}));
    entry["pairs"] = std::move(pairs);
    entry["weight"] = w;
    gens.push_back(std::move(entry));
  }
  j["generators"] = std::move(gens);
  return j;
}

inline std::string union_graph_dot(const EmbeddingResult& e) {
  std::ostringstream out;
  out << "graph embedding {\n";
  for (int i = 0; i < e.space.size(); ++i)
    out << "  p" << i << " [label=\"" << e.space.points[(std::size_t)i] << "\"];\n";
  for (auto& lv : e.matchings.levels)
    for (auto& [a, b] : lv.edges)
      out << "  p" << a << " -- p" << b << " [label=\"" << lv.n << "\"];\n";
  out << "}\n";
  return out.str();
}

inline ojson distortion_report_json(const DistortionReport& r) {
  ojson j;
  j["ok"] = r.ok;
  j["violations"] = r.violations;
  ojson lo = ojson::array(), hi = ojson::array();
  for (auto& [rr, v] : r.rho_minus) {
    ojson e;
    e["r"] = rr;
    e["value"] = extnat_json(v);
    lo.push_back(std::move(e));
  }
  for (auto& [rr, v] : r.rho_plus) {
    ojson e;
    e["r"] = rr;
    e["value"] = extnat_json(v);
    hi.push_back(std::move(e));
  }
  j["rho_minus"] = std::move(lo);
  j["rho_plus"] = std::move(hi);
  return j;
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------
inline ojson band_operator_json(const BandOperator& t) {
  ojson j;
  ojson idx = ojson::array();
  for (auto& e : t.indices) idx.push_back(key_json(e.key));
  j["indices"] = std::move(idx);
  ojson entries = ojson::array();
  for (int i = 0; i < t.n(); ++i)
    for (int c = 0; c < t.n(); ++c) {
      std::complex<double> z = t.at(i, c);
      if (z == std::complex<double>{}) continue;
      entries.push_back(ojson::array({i, c, z.real(), z.imag()}));
    }
  j["entries"] = std::move(entries);
  return j;
}

inline BandOperator band_operator_from_json(const nlohmann::json& j, const SemigroupOracle& oracle,
                                            double tol = 1e-9) {
  std::vector<Element> idx;
  for (auto& k : j.at("indices")) idx.push_back(oracle.make(k.get<Key>()));
  BandOperator t = BandOperator::zero(idx, tol);
  for (auto& e : j.at("entries")) {
    int row = e[0].get<int>(), col = e[1].get<int>();
    if (row < 0 || row >= t.n() || col < 0 || col >= t.n())
      throw validation_error("band operator json: entry index out of range");
    t.at(row, col) = {e[2].get<double>(), e[3].get<double>()};
  }
  return t;
}

inline ojson decomposition_json(const DecompositionResult& d) {
  ojson j;
  ojson terms = ojson::array();
  for (auto& term : d.terms) {
    ojson t;
    t["s"] = key_json(term.s.key);
    ojson f = ojson::array();
    for (std::size_t i = 0; i < term.f.size(); ++i) {
      if (term.f[i] == std::complex<double>{}) continue;
      f.push_back(ojson::array({(int)i, term.f[i].real(), term.f[i].imag()}));
    }
    t["f"] = std::move(f);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  ojson w = ojson::array();
  for (auto& e : d.witness) w.push_back(key_json(e.key));
  j["witness"] = std::move(w);
  j["residual_operator_norm"] = d.residual_operator_norm;
  j["residual_frobenius"] = d.residual_frobenius;
  return j;
}

}  // namespace invgeo
