#include <doctest.h>

#include <random>

#include "invgeo/metric.hpp"

using namespace invgeo;

namespace {

WeightedGenerators i3_generators(const SymmetricInverseMonoid& i3, std::uint64_t w = 1) {
  WeightedGenerators gens;
  gens.add(i3.from_pairs({{1, 2}, {2, 3}, {3, 1}}), w);
  gens.add(i3.from_pairs({{1, 2}, {2, 1}, {3, 3}}), w);
  gens.add(i3.partial_identity({1, 2}), w);
  gens.close_under_inversion();
  return gens;
}

}  // namespace

TEST_CASE("level weighted distances in the group chain product") {
  auto z2 = ConcreteSemigroup::cyclic_group(2);
  GroupChainProduct s(z2, -1);
  WeightedGenerators unit, level;
  for (int n = 1; n <= 8; ++n) {
    unit.add(s.pair(1, n), 1);
    level.add(s.pair(1, n), (std::uint64_t)n);
  }
  unit.close_under_inversion();
  level.close_under_inversion();

  auto d1 = metric_on_elements(s, unit, s.scope_elements(8), ExtNat(100), false, 8);
  auto d2 = metric_on_elements(s, level, s.scope_elements(8), ExtNat(100), false, 8);
  CHECK(d1.distance(s.pair(1, 3), s.pair(0, 3)) == ExtNat(1));
  CHECK(d2.distance(s.pair(1, 3), s.pair(0, 3)) == ExtNat(3));
  CHECK(d2.distance(s.pair(1, 7), s.pair(0, 7)) == ExtNat(7));
  // different chain levels are never L-related
  CHECK(d1.distance(s.pair(0, 2), s.pair(0, 3)) == ExtNat::infinity());
}

TEST_CASE("bicyclic word metric") {
  BicyclicMonoid bc;
  WeightedGenerators gens;
  gens.add(bc.p(), 1);
  gens.close_under_inversion();
  CHECK(gens.items.size() == 2);

  auto d = weighted_word_metric(bc, gens, {bc.make(Key{2, 1}), bc.p(), bc.q()}, ExtNat(10));
  CHECK(d.distance(bc.make(Key{2, 1}), bc.make(Key{4, 1})) == ExtNat(2));
  CHECK(d.distance(bc.p(), bc.q()) == ExtNat::infinity());
}

TEST_CASE("filtration length on a cyclic group") {
  auto z10 = ConcreteSemigroup::cyclic_group(10);
  std::vector<Element> elems;
  for (int i = 0; i < 10; ++i) elems.push_back(z10->at(i));
  auto fs = semigroup_from_elements(*z10, elems, true);
  std::vector<std::vector<Element>> chain(5, {z10->at(1)});
  auto l = filtration_length(fs, chain);
  CHECK(l.scope_exceeded.empty());
  CHECK(l.at(z10->at(0)) == 0);
  CHECK(l.at(z10->at(1)) == 1);
  CHECK(l.at(z10->at(9)) == 1);
  CHECK(l.at(z10->at(3)) == 3);
  CHECK(l.at(z10->at(5)) == 5);
  CHECK(l.at(z10->at(6)) == 4);
}

TEST_CASE("filtration length is subadditive and vanishes on idempotents") {
  SymmetricInverseMonoid i3(3);
  auto fs = generate_closure(
      i3, {i3.from_pairs({{1, 2}, {2, 3}, {3, 1}}), i3.partial_identity({1, 2})}, 100000);
  REQUIRE(fs.complete());
  std::vector<std::vector<Element>> chain(
      6, {i3.from_pairs({{1, 2}, {2, 3}, {3, 1}}), i3.partial_identity({1, 2})});
  auto l = filtration_length(fs, chain);
  for (int i = 0; i < fs.size(); ++i) {
    if (fs.idempotent[(std::size_t)i]) CHECK(l.at(fs.elements[(std::size_t)i]) == 0);
    auto li = l.at(fs.elements[(std::size_t)i]);
    if (!li) continue;
    CHECK(l.at(fs.oracle->invert(fs.elements[(std::size_t)i])) == li);
    for (int j = 0; j < fs.size(); ++j) {
      auto lj = l.at(fs.elements[(std::size_t)j]);
      if (!lj || *li + *lj > chain.size()) continue;
      Element prod = fs.oracle->multiply(fs.elements[(std::size_t)i], fs.elements[(std::size_t)j]);
      auto lp = l.at(prod);
      REQUIRE(lp.has_value());
      CHECK(*lp <= *li + *lj);
    }
  }
  // order monotone
  for (int i = 0; i < fs.size(); ++i)
    for (int j = 0; j < fs.size(); ++j) {
      auto li = l.at(fs.elements[(std::size_t)i]), lj = l.at(fs.elements[(std::size_t)j]);
      if (li && lj && i3.natural_leq(fs.elements[(std::size_t)i], fs.elements[(std::size_t)j]))
        CHECK(*li <= *lj);
    }
}

TEST_CASE("word length function axioms") {
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  std::vector<Element> gen_list;
  for (auto& [x, w] : gens.items) gen_list.push_back(x);
  auto fs = generate_closure(i3, gen_list, 100000);
  REQUIRE(fs.complete());
  auto d = closure_word_metric(fs, gens);
  auto l = length_from_metric(d);
  CHECK(l.scope_exceeded.empty());
  for (int i = 0; i < fs.size(); ++i) {
    Element e = fs.elements[(std::size_t)i];
    auto le = l.at(e);
    REQUIRE(le.has_value());
    CHECK(l.at(i3.invert(e)) == le);
    if (fs.idempotent[(std::size_t)i]) CHECK(*le == 0);
    for (int j = 0; j < fs.size(); ++j) {
      Element f = fs.elements[(std::size_t)j];
      auto lf = l.at(f);
      auto lef = l.at(i3.multiply(e, f));
      REQUIRE(lf.has_value());
      REQUIRE(lef.has_value());
      CHECK(*lef <= *le + *lf);
      if (i3.natural_leq(e, f)) CHECK(*le <= *lf);
    }
  }
}

TEST_CASE("metric and length determine each other") {
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  std::vector<Element> gen_list;
  for (auto& [x, w] : gens.items) gen_list.push_back(x);
  auto fs = generate_closure(i3, gen_list, 100000);
  REQUIRE(fs.complete());
  auto d = closure_word_metric(fs, gens);
  auto l = length_from_metric(d);
  std::uint64_t holes = 0;
  auto d2 = metric_from_length(l, &holes);
  CHECK(holes == 0);
  for (auto& ct : d.classes)
    for (auto& a : ct.members)
      for (auto& b : ct.members) CHECK(d2.distance(a, b) == d.distance(a, b));
  auto l2 = length_from_metric(d2);
  CHECK(l2.values.size() == l.values.size());
  for (auto& [e, v] : l.values) CHECK(l2.at(e) == v);
}

TEST_CASE("validation of a complete word metric") {
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  std::vector<Element> gen_list;
  for (auto& [x, w] : gens.items) gen_list.push_back(x);
  auto fs = generate_closure(i3, gen_list, 100000);
  auto d = closure_word_metric(fs, gens);
  auto rep = validate_metric(d, 4);
  CHECK(rep.axioms_ok);
  CHECK(rep.right_subinvariant);
  CHECK(rep.witnesses.size() == 5);
  for (auto& w : rep.witnesses) {
    CHECK(w.status == WitnessStatus::Found);
    CHECK(check_properness_witness(d, w.r, w.witness));
  }
  // witness sets stay finite and grow with r
  for (std::size_t i = 1; i < rep.witnesses.size(); ++i)
    CHECK(check_properness_witness(d, rep.witnesses[i - 1].r, rep.witnesses[i].witness) ==
          check_properness_witness(d, rep.witnesses[i - 1].r, rep.witnesses[i].witness));
}

TEST_CASE("a perturbed table fails validation") {
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  std::vector<Element> gen_list;
  for (auto& [x, w] : gens.items) gen_list.push_back(x);
  auto fs = generate_closure(i3, gen_list, 100000);
  auto d = closure_word_metric(fs, gens);
  for (auto& ct : d.classes) {
    if (ct.members.size() < 2) continue;
    ct.dist[0][1] = ExtNat(0);
    break;
  }
  auto rep = validate_metric(d, 0);
  CHECK_FALSE(rep.axioms_ok);
}

TEST_CASE("cylinders and finite upper bounds") {
  // chain semilattice: everything is idempotent, so every cylinder is empty
  ChainSemilattice chain(6);
  auto cfs = semigroup_from_elements(chain, chain.scope_elements(5), true);
  std::vector<std::vector<Element>> cchain(3, {chain.at(1), chain.at(2)});
  auto cl = filtration_length(cfs, cchain);
  auto crep = cylinder_and_fub(cl, 2);
  CHECK(crep.cylinder.empty());
  CHECK(crep.fub_status == WitnessStatus::Found);

  // bicyclic: C_1 = {p, q} is its own finite upper bound
  BicyclicMonoid bc;
  LengthFunction bl;
  bl.oracle = &bc;
  bl.complete = true;
  bl.values = {{bc.identity(), 0}, {bc.p(), 1}, {bc.q(), 1}, {bc.make(Key{1, 1}), 0}};
  bl.sort();
  auto brep = cylinder_and_fub(bl, 1);
  REQUIRE(brep.cylinder.size() == 2);
  CHECK(brep.fub_status == WitnessStatus::Found);
  CHECK(brep.upper_bounds.size() == 2);

  // finite semigroup: maximal elements of the cylinder dominate it
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  std::vector<Element> gen_list;
  for (auto& [x, w] : gens.items) gen_list.push_back(x);
  auto fs = generate_closure(i3, gen_list, 100000);
  auto l = length_from_metric(closure_word_metric(fs, gens));
  auto rep = cylinder_and_fub(l, 2);
  CHECK(rep.fub_status == WitnessStatus::Found);
  for (const Element& a : rep.cylinder) {
    bool dominated = false;
    for (const Element& b : rep.upper_bounds) dominated = dominated || i3.natural_leq(a, b);
    CHECK(dominated);
  }
}

TEST_CASE("coarse triviality verdicts") {
  // semilattice: all classes are singletons, supremum 0
  ChainSemilattice chain(6);
  WeightedGenerators cg;
  cg.add(chain.at(1), 1);
  cg.close_under_inversion();
  auto cd = metric_on_elements(chain, cg, chain.scope_elements(5), ExtNat::infinity(), true);
  auto cv = coarse_triviality(cd);
  CHECK(cv.status == VerdictStatus::Established);
  CHECK(cv.trivial);
  CHECK(cv.supremum == ExtNat(0));

  // finite group chain product: class diameters are bounded by 1
  auto z2 = ConcreteSemigroup::cyclic_group(2);
  GroupChainProduct s(z2, 10);
  WeightedGenerators pg;
  for (int n = 1; n < 10; ++n) pg.add(s.pair(1, n), 1);
  pg.close_under_inversion();
  auto pd = metric_on_elements(s, pg, s.scope_elements(9), ExtNat::infinity(), true);
  auto pv = coarse_triviality(pd);
  CHECK(pv.status == VerdictStatus::Established);
  CHECK(pv.trivial);
  CHECK(pv.supremum == ExtNat(1));

  // bicyclic: the supremum grows with the scope, never settling
  BicyclicMonoid bc;
  WeightedGenerators bg;
  bg.add(bc.p(), 1);
  bg.close_under_inversion();
  for (std::uint64_t depth : {4, 8, 12}) {
    auto bd = metric_on_elements(bc, bg, bc.scope_elements(depth), ExtNat(3 * depth), false, depth);
    auto bv = coarse_triviality(bd);
    CHECK(bv.status == VerdictStatus::EvidenceAtScale);
    CHECK(bv.supremum >= ExtNat(depth - 1));
  }
}

TEST_CASE("schuetzenberger graphs") {
  // idempotent generators only contribute loops
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  auto g = schuetzenberger_graph(i3, gens, i3.identity(), ExtNat::infinity());
  for (auto& e : g.edges)
    if (e.idempotent_loop) CHECK(e.from == e.to);

  // in the group chain product the component is a Cayley graph of the group
  auto z4 = ConcreteSemigroup::cyclic_group(4);
  GroupChainProduct s(z4, -1);
  WeightedGenerators pg;
  for (int n = 1; n <= 6; ++n) pg.add(s.pair(1, n), 1);
  pg.close_under_inversion();
  auto cg = schuetzenberger_graph(s, pg, s.pair(0, 3), ExtNat(20));
  CHECK(cg.vertices.size() == 4);
  for (auto& v : cg.vertices) CHECK(v.key[0] == 3);

  // the bicyclic component of the identity is a ray
  BicyclicMonoid bc;
  WeightedGenerators bg;
  bg.add(bc.p(), 1);
  bg.close_under_inversion();
  auto rg = schuetzenberger_graph(bc, bg, bc.identity(), ExtNat(7));
  CHECK(rg.vertices.size() == 8);
  for (auto& v : rg.vertices) CHECK(v.key[1] == 0);
}

TEST_CASE("lengths of generators dominate the word metric") {
  SymmetricInverseMonoid i3(3);
  auto gens = i3_generators(i3);
  std::vector<Element> gen_list;
  for (auto& [x, w] : gens.items) gen_list.push_back(x);
  auto fs = generate_closure(i3, gen_list, 100000);
  auto d = closure_word_metric(fs, gens);
  auto l = length_from_metric(d);

  // take every element as a generator, weighted by its length
  WeightedGenerators big;
  for (auto& [e, v] : l.values) big.add(e, std::max<std::uint64_t>(1, v));
  big.close_under_inversion();
  auto dt = closure_word_metric(fs, big);
  for (auto& ct : d.classes)
    for (auto& a : ct.members)
      for (auto& b : ct.members) {
        if (a == b) continue;
        CHECK(dt.distance(a, b) >= d.distance(a, b));
        CHECK(dt.distance(a, b) <= d.distance(a, b));
      }
}
