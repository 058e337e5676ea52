// End-to-end acceptance run: one line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <random>

#include "invgeo/coarse.hpp"
#include "invgeo/embed.hpp"
#include "invgeo/io.hpp"
#include "invgeo/roe.hpp"

using namespace invgeo;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int number, const char* name, bool pass, double secs) {
  std::printf("criterion %d (%s): %s  [%.2fs]\n", number, name, pass ? "PASS" : "FAIL", secs);
  if (!pass) ++failures;
}

std::vector<Element> brute_i3() {
  SymmetricInverseMonoid i3(3);
  return i3.all_elements();
}

// random generating sets in I4, deterministic in the seed
std::vector<std::vector<Element>> i4_generator_corpus(const SymmetricInverseMonoid& i4, int count,
                                                      std::mt19937_64& rng) {
  auto all = i4.all_elements();
  std::vector<std::vector<Element>> out;
  for (int t = 0; t < count; ++t) {
    std::vector<Element> gens;
    int k = 1 + (int)(rng() % 3);
    for (int g = 0; g < k; ++g) gens.push_back(all[rng() % all.size()]);
    out.push_back(std::move(gens));
  }
  return out;
}

WeightedGenerators weighted(const std::vector<Element>& gens, bool unit, std::mt19937_64& rng) {
  WeightedGenerators w;
  std::map<Key, std::uint64_t, KeyLess> assigned;
  for (const Element& g : gens) {
    const SemigroupOracle& oracle = *g.origin;
    Key inv = oracle.invert(g).key;
    auto it = assigned.find(g.key);
    if (it == assigned.end()) it = assigned.find(inv);
    std::uint64_t weight = it != assigned.end() ? it->second : (unit ? 1 : 1 + rng() % 5);
    if (assigned.count(g.key)) continue;
    assigned[g.key] = weight;
    assigned[inv] = weight;
    w.add(g, weight);
  }
  w.close_under_inversion();
  return w;
}

// -- criterion 1 ------------------------------------------------------------
bool criterion1() {
  SymmetricInverseMonoid i3(3);
  auto fs = generate_closure(
      i3,
      {i3.from_pairs({{1, 2}, {2, 3}, {3, 1}}), i3.from_pairs({{1, 2}, {2, 1}, {3, 3}}),
       i3.partial_identity({1, 2})},
      100000);
  if (!fs.complete() || fs.size() != 34) return false;
  auto gt = green_table(fs);
  if (gt.d_members.size() != 4) return false;
  // the D-classes are the ranks 0..3
  std::set<std::size_t> rank_sizes;
  for (auto& members : gt.d_members) {
    std::set<std::size_t> ranks;
    for (int i : members) ranks.insert(fs.elements[(std::size_t)i].key.size() / 2);
    if (ranks.size() != 1) return false;
    rank_sizes.insert(*ranks.begin());
  }
  if (rank_sizes != std::set<std::size_t>{0, 1, 2, 3}) return false;
  auto expected = brute_i3();
  if (expected.size() != 34) return false;
  for (auto& e : fs.elements)
    if (!std::binary_search(expected.begin(), expected.end(), e)) return false;
  return true;
}

// -- criteria 2 and 3 share the corpus --------------------------------------
bool criterion2(std::uint64_t seed, ojson* out) {
  SymmetricInverseMonoid i4(4);
  std::mt19937_64 rng(seed);
  auto corpus = i4_generator_corpus(i4, 100, rng);
  ojson samples = ojson::array();
  bool ok = true;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    auto fs = generate_closure(i4, corpus[t], 100000);
    if (!fs.complete()) return false;
    auto gens = weighted(corpus[t], t % 2 == 0, rng);
    auto d = closure_word_metric(fs, gens);
    auto l = length_from_metric(d);
    std::uint64_t holes = 0;
    auto d2 = metric_from_length(l, &holes);
    ok = ok && holes == 0 && l.scope_exceeded.empty();
    for (auto& ct : d.classes)
      for (auto& a : ct.members)
        for (auto& b : ct.members) ok = ok && d2.distance(a, b) == d.distance(a, b);
    auto l2 = length_from_metric(d2);
    ok = ok && l2.values.size() == l.values.size();
    for (auto& [e, v] : l.values) ok = ok && l2.at(e) == v;
    if (out && t < 5) samples.push_back(metric_table_json(d));
  }
  if (out) {
    (*out)["round_trip_exact"] = ok;
    (*out)["sample_metrics"] = std::move(samples);
  }
  return ok;
}

bool criterion3(std::uint64_t seed, ojson* out) {
  SymmetricInverseMonoid i4(4);
  std::mt19937_64 rng(seed);
  auto corpus = i4_generator_corpus(i4, 100, rng);
  std::uint64_t violations = 0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    auto fs = generate_closure(i4, corpus[t], 100000);
    auto gens = weighted(corpus[t], t % 2 == 0, rng);
    auto d = closure_word_metric(fs, gens);

    for (int si = 0; si < fs.size(); ++si) {
      Element s = fs.elements[(std::size_t)si];
      Element ss = i4.multiply(i4.invert(s), s);
      ExtNat ls = d.distance(ss, s);
      for (int ti = 0; ti < fs.size(); ++ti) {
        Element tt = fs.elements[(std::size_t)ti];
        if (i4.multiply(ss, tt) != tt) continue;
        // (1): left translation moves points at most l(s)
        if (d.distance(tt, i4.multiply(s, tt)) > ls) ++violations;
      }
      // (3): t -> t s* is an isometry from L_s onto L_{s*}
      std::vector<Element> ls_class;
      for (int ti = 0; ti < fs.size(); ++ti) {
        Element tt = fs.elements[(std::size_t)ti];
        if (i4.multiply(i4.invert(tt), tt) == ss) ls_class.push_back(tt);
      }
      std::set<Key, KeyLess> image;
      for (auto& a : ls_class) {
        image.insert(i4.multiply(a, i4.invert(s)).key);
        for (auto& b : ls_class)
          if (d.distance(i4.multiply(a, i4.invert(s)), i4.multiply(b, i4.invert(s))) !=
              d.distance(a, b))
            ++violations;
      }
      if (image.size() != ls_class.size()) ++violations;
    }

    // (5): D-related L-classes are isometric via t -> t u*
    auto gt = green_table(fs);
    for (int ui = 0; ui < fs.size(); ++ui) {
      Element u = fs.elements[(std::size_t)ui];
      Element e1 = i4.multiply(i4.invert(u), u);
      Element e2 = i4.multiply(u, i4.invert(u));
      std::vector<Element> from, to;
      for (int ti = 0; ti < fs.size(); ++ti) {
        Element tt = fs.elements[(std::size_t)ti];
        if (i4.multiply(i4.invert(tt), tt) == e1) from.push_back(tt);
        if (i4.multiply(i4.invert(tt), tt) == e2) to.push_back(tt);
      }
      if (from.size() != to.size()) ++violations;
      for (auto& a : from)
        for (auto& b : from)
          if (d.distance(i4.multiply(a, i4.invert(u)), i4.multiply(b, i4.invert(u))) !=
              d.distance(a, b))
            ++violations;
    }
  }
  if (out) (*out)["translation_violations"] = violations;
  return violations == 0;
}

// -- criterion 4 ------------------------------------------------------------
FiniteMetricSpace random_space(int n, int diam, std::mt19937_64& rng) {
  FiniteMetricSpace x;
  for (int i = 0; i < n; ++i) x.points.push_back("x" + std::to_string(i));
  x.dist.assign((std::size_t)n, std::vector<int>((std::size_t)n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      x.dist[(std::size_t)i][(std::size_t)j] = x.dist[(std::size_t)j][(std::size_t)i] =
          1 + (int)(rng() % (std::uint64_t)diam);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        x.dist[(std::size_t)i][(std::size_t)j] =
            std::min(x.dist[(std::size_t)i][(std::size_t)j],
                     x.dist[(std::size_t)i][(std::size_t)k] + x.dist[(std::size_t)k][(std::size_t)j]);
  return x;
}

bool criterion4(std::uint64_t seed, ojson* out) {
  std::mt19937_64 rng(seed);
  bool ok = true;
  ojson reports = ojson::array();
  for (int t = 0; t < 50; ++t) {
    auto x = random_space(4 + (int)(rng() % 37), 1 + (int)(rng() % 20), rng);
    auto res = embed_space(x);
    auto rep = verify_distortion(res);
    ok = ok && rep.ok;
    if (out && t < 5) reports.push_back(distortion_report_json(rep));
  }
  if (out) {
    (*out)["distortion_ok"] = ok;
    (*out)["sample_reports"] = std::move(reports);
  }
  return ok;
}

// -- criterion 5 ------------------------------------------------------------
bool criterion5(std::uint64_t seed, ojson* out) {
  SymmetricInverseMonoid i3(3);
  WeightedGenerators gens;
  gens.add(i3.from_pairs({{1, 2}, {2, 3}, {3, 1}}), 1);
  gens.add(i3.from_pairs({{1, 2}, {2, 1}, {3, 3}}), 1);
  gens.add(i3.partial_identity({1, 2}), 1);
  gens.close_under_inversion();
  auto fs = semigroup_from_elements(i3, i3.all_elements(), true);
  auto d = closure_word_metric(fs, gens);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    BandOperator op = BandOperator::zero(fs.elements);
    for (int i = 0; i < op.n(); ++i)
      for (int j = 0; j < op.n(); ++j) {
        ExtNat dist = d.distance(op.indices[(std::size_t)j], op.indices[(std::size_t)i]);
        if (dist.is_finite() && dist.value() <= 2 && rng() % 3 == 0) op.at(i, j) = {u(rng), u(rng)};
      }
    auto dec = decompose_band(op, fs, d);
    worst = std::max(worst, dec.residual_operator_norm);
    ok = ok && dec.residual_operator_norm <= 1e-9;
    for (auto& term : dec.terms) {
      BandOperator diag = BandOperator::zero(fs.elements);
      for (std::size_t i = 0; i < term.f.size(); ++i) diag.at((int)i, (int)i) = term.f[i];
      ok = ok && propagation(diag, d) == ExtNat(0);
    }
    if (out && t == 0) (*out)["first_decomposition"] = decomposition_json(dec);
  }
  if (out) (*out)["worst_residual"] = worst;
  return ok;
}

// -- criterion 6 ------------------------------------------------------------
bool criterion6(ojson* out) {
  auto z2 = ConcreteSemigroup::cyclic_group(2);
  GroupChainProduct s(z2, -1);
  auto build = [&](std::uint64_t depth, bool level_weights) {
    WeightedGenerators g;
    for (std::uint64_t n = 1; n <= depth; ++n)
      g.add(s.pair(1, (std::int64_t)n), level_weights ? n : 1);
    g.close_under_inversion();
    return metric_on_elements(s, g, s.scope_elements(depth), ExtNat(10 * depth), false, depth);
  };

  bool ok = true;
  auto d2 = build(50, true);
  // (a) the ball around (e, r) of radius r is a witness for scale r
  ojson balls = ojson::array();
  for (std::uint64_t r = 1; r <= 5; ++r) {
    std::vector<Element> ball;
    Element center = s.pair(s.group_identity(), (std::int64_t)r);
    for (auto& [k, pos] : d2.index) {
      Element e = s.make(k);
      ExtNat dist = d2.distance(center, e);
      if (dist.is_finite() && dist.value() <= r) ball.push_back(e);
    }
    ok = ok && check_properness_witness(d2, r, ball);
    ojson b = ojson::array();
    for (auto& e : ball) b.push_back(key_json(e.key));
    balls.push_back({{"r", r}, {"ball", std::move(b)}});
  }
  // (b) d1 has no properness witness at scale 1 within the truncation
  auto d1 = build(50, false);
  auto w1 = properness_witness(d1, 1);
  ok = ok && w1.status == WitnessStatus::NotFoundAtScale;
  // (c) rho_plus at r = 1 keeps growing as the truncation deepens
  std::vector<CoarseProfile> profiles;
  ojson rho = ojson::array();
  for (std::uint64_t depth : {10, 20, 30, 40, 50}) {
    profiles.push_back(coarse_profile(build(depth, false), build(depth, true)));
    rho.push_back({{"depth", depth},
                   {"rho_plus_1", extnat_json(profiles.back().rho_plus_at(1))}});
  }
  ok = ok && rho_plus_unbounded(profiles, 1);
  if (out) {
    (*out)["d2_ball_witnesses"] = std::move(balls);
    (*out)["d1_witness_r1"] = witness_status_name(w1.status);
    (*out)["rho_plus_trace"] = std::move(rho);
    (*out)["rho_plus_unbounded"] = rho_plus_unbounded(profiles, 1);
  }
  return ok;
}

// -- criterion 7 ------------------------------------------------------------
bool criterion7(std::uint64_t seed, ojson* out) {
  bool ok = true;

  FreeInverseMonoid1 f;
  WeightedGenerators fg;
  fg.add(f.x(), 1);
  fg.close_under_inversion();
  std::uint64_t depth = 8;
  auto fd = metric_on_elements(f, fg, f.scope_elements(depth), ExtNat(4 * depth), false, depth);
  auto fsparse = sparse_evidence(fd, {1});
  ok = ok && fsparse.holds && fsparse.status == VerdictStatus::EvidenceAtScale;
  auto fpart = r_components(fd, 1);
  for (auto& b : fpart.blocks) {
    if (!b.closed) continue;
    // the class of (-c, g, d) has c + d + 1 members
    std::int64_t c = -b.members[0].key[0], dd = b.members[0].key[2];
    ok = ok && b.size() == (std::uint64_t)(c + dd + 1);
  }
  auto fdim = asdim0_evidence(fd, {1}, &fg);
  ok = ok && fdim.status == VerdictStatus::RefutedAtScale && fdim.witness.size() >= 8;
  ok = ok && detail::revalidate_path(f, fg, fdim.witness, fdim.witness_scale);

  BicyclicMonoid bc;
  WeightedGenerators bg;
  bg.add(bc.p(), 1);
  bg.close_under_inversion();
  auto bd = metric_on_elements(bc, bg, bc.scope_elements(depth), ExtNat(4 * depth), false, depth);
  auto bsparse = sparse_evidence(bd, {1});
  auto bdim = asdim0_evidence(bd, {1}, &bg);
  ok = ok && !bsparse.holds && !bdim.holds;

  SymmetricInverseMonoid i4(4);
  std::mt19937_64 rng(seed);
  auto corpus = i4_generator_corpus(i4, 20, rng);
  for (auto& gens : corpus) {
    auto fs = generate_closure(i4, gens, 100000);
    auto w = weighted(gens, true, rng);
    auto d = closure_word_metric(fs, w);
    auto a = asdim0_evidence(d, {1, 2});
    auto sp = sparse_evidence(d, {1, 2});
    ok = ok && a.status == VerdictStatus::Established && a.holds;
    ok = ok && sp.status == VerdictStatus::Established && sp.holds;
  }

  if (out) {
    (*out)["fim1_sparse"] = coarse_verdict_json(fsparse);
    (*out)["fim1_asdim0"] = coarse_verdict_json(fdim);
    (*out)["bicyclic_sparse"] = coarse_verdict_json(bsparse);
    (*out)["bicyclic_asdim0"] = coarse_verdict_json(bdim);
  }
  return ok;
}

ojson full_report(std::uint64_t seed) {
  ojson rep;
  rep["seed"] = seed;
  ojson c2, c3, c4, c5, c6, c7;
  criterion2(seed, &c2);
  criterion3(seed, &c3);
  criterion4(seed, &c4);
  criterion5(seed, &c5);
  criterion6(&c6);
  criterion7(seed, &c7);
  rep["round_trip"] = std::move(c2);
  rep["translation_laws"] = std::move(c3);
  rep["distortion"] = std::move(c4);
  rep["decomposition"] = std::move(c5);
  rep["profiles"] = std::move(c6);
  rep["separation"] = std::move(c7);
  return rep;
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240817;

  {
    Timer t;
    bool pass = criterion1();
    double secs = t.seconds();
    report(1, "closure exactness", pass && secs < 1.0, secs);
  }
  {
    Timer t;
    bool pass = criterion2(seed, nullptr);
    double secs = t.seconds();
    report(2, "round trip", pass && secs < 30.0, secs);
  }
  {
    Timer t;
    bool pass = criterion3(seed, nullptr);
    double secs = t.seconds();
    report(3, "translation laws", pass, secs);
  }
  {
    Timer t;
    bool pass = criterion4(seed, nullptr);
    double secs = t.seconds();
    report(4, "embedding distortion", pass && secs < 60.0, secs);
  }
  {
    Timer t;
    bool pass = criterion5(seed, nullptr);
    double secs = t.seconds();
    report(5, "band decomposition", pass && secs < 60.0, secs);
  }
  {
    Timer t;
    bool pass = criterion6(nullptr);
    double secs = t.seconds();
    report(6, "properness profiles", pass, secs);
  }
  {
    Timer t;
    bool pass = criterion7(seed, nullptr);
    double secs = t.seconds();
    report(7, "separating examples", pass && secs < 30.0, secs);
  }
  {
    Timer t;
    std::string first = full_report(seed).dump();
    std::string second = full_report(seed).dump();
    double secs = t.seconds();
    report(8, "determinism", first == second && !first.empty(), secs);
  }

  if (failures == 0) std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
