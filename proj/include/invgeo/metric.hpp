#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "invgeo/closure.hpp"
#include "invgeo/oracle.hpp"

namespace invgeo {

// Symmetric weighted generating set for word metrics. Weights are positive
// integers and w(x) = w(x*).
struct WeightedGenerators {
  const SemigroupOracle* oracle = nullptr;
  std::vector<std::pair<Element, std::uint64_t>> items;

  void add(const Element& x, std::uint64_t w) {
    if (w == 0) throw validation_error("generator weight must be positive");
    if (oracle == nullptr) oracle = x.origin;
    items.push_back({x, w});
  }

  // Closes the set under inversion and checks w(x) = w(x*).
  void close_under_inversion() {
    std::map<Key, std::uint64_t, KeyLess> by_key;
    for (auto& [x, w] : items) {
      auto it = by_key.find(x.key);
      if (it != by_key.end() && it->second != w)
        throw validation_error("conflicting weights for generator " + key_to_string(x.key));
      by_key[x.key] = w;
    }
    for (auto& [x, w] : std::vector<std::pair<Element, std::uint64_t>>(items)) {
      Element xi = oracle->invert(x);
      auto it = by_key.find(xi.key);
      if (it == by_key.end()) {
        by_key[xi.key] = w;
      } else if (it->second != w) {
        throw validation_error("w(x) != w(x*) for generator " + key_to_string(x.key));
      }
    }
    items.clear();
    for (auto& [k, w] : by_key) items.push_back({oracle->make(k), w});
  }
};

// Extended-distance table, one block per L-class; cross-class distances are
// infinite. A table is either Complete (covers every listed element exactly)
// or certified up to `radius`: finite entries <= radius are exact shortest
// paths, INF entries only mean "greater than radius".
struct MetricTable {
  struct ClassTable {
    Key class_key;  // canonical key of the common idempotent s*s
    std::vector<Element> members;
    std::vector<std::vector<ExtNat>> dist;
    // Per member: least weight of a one-generator step inside the L-class
    // that leaves the table's element set; infinity if none. Blocks with no
    // frontier contact are certified whole components.
    std::vector<ExtNat> frontier_weight;
  };

  const SemigroupOracle* oracle = nullptr;
  std::vector<ClassTable> classes;  // ordered by class_key
  std::map<Key, std::pair<int, int>, KeyLess> index;  // key -> (class, position)
  bool complete = false;
  ExtNat radius = ExtNat::infinity();
  std::uint64_t scope_depth = 0;  // family truncation depth, 0 if not applicable

  int total_size() const {
    int n = 0;
    for (auto& c : classes) n += (int)c.members.size();
    return n;
  }

  std::optional<std::pair<int, int>> find(const Element& e) const {
    auto it = index.find(e.key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  ExtNat distance(const Element& a, const Element& b) const {
    auto pa = find(a), pb = find(b);
    if (!pa || !pb) throw alignment_error("element not in metric table scope");
    if (pa->first != pb->first) return ExtNat::infinity();
    return classes[(std::size_t)pa->first].dist[(std::size_t)pa->second][(std::size_t)pb->second];
  }
};

namespace detail {

struct DijkstraResult {
  std::map<Key, std::uint64_t, KeyLess> dist;
};

// Shortest paths from `source` over the implicit Schutzenberger graph: edges
// t -> xt of weight w(x) for generators x with x*x t = t. Exploration is not
// restricted to any element set, so finite results <= cap are exact.
inline DijkstraResult dijkstra_ball(const SemigroupOracle& oracle, const WeightedGenerators& gens,
                                    const Element& source, ExtNat cap) {
  DijkstraResult res;
  using QItem = std::pair<std::uint64_t, Key>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
  res.dist[source.key] = 0;
  pq.push({0, source.key});
  while (!pq.empty()) {
    auto [du, ku] = pq.top();
    pq.pop();
    auto it = res.dist.find(ku);
    if (it == res.dist.end() || it->second != du) continue;
    Element u = oracle.make(ku);
    for (auto& [x, w] : gens.items) {
      if (cap.is_finite() && du + w > cap.value()) continue;
      Element xxu = oracle.multiply(oracle.multiply(oracle.invert(x), x), u);
      if (xxu != u) continue;  // xu leaves the L-class
      Element v = oracle.multiply(x, u);
      std::uint64_t dv = du + w;
      auto vt = res.dist.find(v.key);
      if (vt == res.dist.end() || dv < vt->second) {
        res.dist[v.key] = dv;
        pq.push({dv, v.key});
      }
    }
  }
  return res;
}

}  // namespace detail

// Word metric with weighted generators over a fixed element set. Distances
// are shortest paths in the implicit left Cayley graph; the search may pass
// through elements outside the set, capped at `cap` total weight.
inline MetricTable metric_on_elements(const SemigroupOracle& oracle, const WeightedGenerators& gens,
                                      const std::vector<Element>& elements, ExtNat cap,
                                      bool complete, std::uint64_t scope_depth = 0) {
  MetricTable table;
  table.oracle = &oracle;
  table.complete = complete;
  table.radius = complete ? ExtNat::infinity() : cap;
  table.scope_depth = scope_depth;

  std::set<Key, KeyLess> in_scope;
  for (const Element& e : elements) in_scope.insert(e.key);

  // group by L-class (key of s*s), members in canonical order
  std::map<Key, std::vector<Element>, KeyLess> by_class;
  for (const Key& k : in_scope) {
    Element e = oracle.make(k);
    by_class[oracle.multiply(oracle.invert(e), e).key].push_back(e);
  }
  for (auto& [ck, members] : by_class) {
    MetricTable::ClassTable ct;
    ct.class_key = ck;
    ct.members = members;  // already key-sorted via in_scope iteration
    std::size_t m = members.size();
    ct.dist.assign(m, std::vector<ExtNat>(m, ExtNat::infinity()));
    ct.frontier_weight.assign(m, ExtNat::infinity());
    int ci = (int)table.classes.size();
    for (std::size_t i = 0; i < m; ++i) table.index[members[i].key] = {ci, (int)i};
    table.classes.push_back(std::move(ct));
  }

  for (auto& ct : table.classes) {
    std::size_t m = ct.members.size();
    for (std::size_t i = 0; i < m; ++i) {
      auto ball = detail::dijkstra_ball(oracle, gens, ct.members[i], cap);
      for (std::size_t j = 0; j < m; ++j) {
        auto it = ball.dist.find(ct.members[j].key);
        if (it != ball.dist.end()) ct.dist[i][j] = ExtNat(it->second);
      }
      // frontier contact: a one-step in-class neighbor outside the scope set
      Element u = ct.members[i];
      for (auto& [x, w] : gens.items) {
        Element xxu = oracle.multiply(oracle.multiply(oracle.invert(x), x), u);
        if (xxu != u) continue;
        Element v = oracle.multiply(x, u);
        if (!in_scope.count(v.key) && ExtNat(w) < ct.frontier_weight[i])
          ct.frontier_weight[i] = ExtNat(w);
      }
    }
  }
  return table;
}

// Ball-scoped word metric: the element set is the union of radius-R balls
// around the basepoints.
inline MetricTable weighted_word_metric(const SemigroupOracle& oracle,
                                        const WeightedGenerators& gens,
                                        const std::vector<Element>& basepoints, ExtNat radius) {
  std::set<Key, KeyLess> scope;
  for (const Element& b : basepoints) {
    auto ball = detail::dijkstra_ball(oracle, gens, b, radius);
    for (auto& [k, d] : ball.dist) scope.insert(k);
  }
  std::vector<Element> elements;
  for (const Key& k : scope) elements.push_back(oracle.make(k));
  bool complete = oracle.is_globally_finite() && !radius.is_finite();
  return metric_on_elements(oracle, gens, elements, radius, complete);
}

// Full word metric over a Complete closure.
inline MetricTable closure_word_metric(const FiniteSemigroup& s, const WeightedGenerators& gens) {
  if (!s.complete()) throw validation_error("closure_word_metric: requires a Complete closure");
  return metric_on_elements(*s.oracle, gens, s.elements, ExtNat::infinity(), true);
}

// ---------------------------------------------------------------------------
// Length functions
// ---------------------------------------------------------------------------
struct LengthFunction {
  const SemigroupOracle* oracle = nullptr;
  std::vector<std::pair<Element, std::uint64_t>> values;  // sorted by key
  std::vector<Element> scope_exceeded;  // elements the construction could not reach
  bool complete = false;
  std::uint64_t scope_depth = 0;

  std::optional<std::uint64_t> at(const Element& e) const {
    auto it = std::lower_bound(values.begin(), values.end(), e.key,
                               [](const auto& p, const Key& k) {
                                 return compare_keys(p.first.key, k) < 0;
                               });
    if (it == values.end() || it->first.key != e.key) return std::nullopt;
    return it->second;
  }

  void sort() {
    std::sort(values.begin(), values.end(),
              [](const auto& a, const auto& b) { return compare_keys(a.first.key, b.first.key) < 0; });
  }
};

// l(s) = d(s*s, s), read off the class block containing s. Elements whose
// class idempotent is outside the table (possible in truncations) land in
// scope_exceeded.
inline LengthFunction length_from_metric(const MetricTable& d) {
  LengthFunction l;
  l.oracle = d.oracle;
  l.complete = d.complete;
  l.scope_depth = d.scope_depth;
  for (auto& ct : d.classes) {
    auto ip = d.find(d.oracle->make(ct.class_key));
    std::optional<int> idem;
    if (ip && d.classes[(std::size_t)ip->first].class_key == ct.class_key) idem = ip->second;
    for (std::size_t i = 0; i < ct.members.size(); ++i) {
      if (!idem) {
        l.scope_exceeded.push_back(ct.members[i]);
        continue;
      }
      ExtNat v = ct.dist[(std::size_t)*idem][i];
      if (!v.is_finite()) {
        l.scope_exceeded.push_back(ct.members[i]);
        continue;
      }
      l.values.push_back({ct.members[i], v.value()});
    }
  }
  l.sort();
  return l;
}

// d(s, t) = l(t s*) for L-related s, t; infinite across classes. Products
// outside the length function's scope leave the entry infinite and are
// counted in `holes`.
inline MetricTable metric_from_length(const LengthFunction& l, std::uint64_t* holes = nullptr) {
  const SemigroupOracle& oracle = *l.oracle;
  MetricTable d;
  d.oracle = l.oracle;
  d.complete = l.complete;
  d.radius = l.complete ? ExtNat::infinity() : ExtNat(0);
  d.scope_depth = l.scope_depth;
  if (holes) *holes = 0;

  std::map<Key, std::vector<Element>, KeyLess> by_class;
  for (auto& [e, v] : l.values)
    by_class[oracle.multiply(oracle.invert(e), e).key].push_back(e);
  for (auto& [ck, members] : by_class) {
    MetricTable::ClassTable ct;
    ct.class_key = ck;
    std::sort(members.begin(), members.end());
    ct.members = members;
    std::size_t m = members.size();
    ct.dist.assign(m, std::vector<ExtNat>(m, ExtNat::infinity()));
    ct.frontier_weight.assign(m, ExtNat::infinity());
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        Element ts = oracle.multiply(members[j], oracle.invert(members[i]));
        auto v = l.at(ts);
        if (v) {
          ct.dist[i][j] = ExtNat(*v);
        } else if (holes) {
          ++*holes;
        }
      }
    }
    int ci = (int)d.classes.size();
    for (std::size_t i = 0; i < m; ++i) d.index[members[i].key] = {ci, (int)i};
    d.classes.push_back(std::move(ct));
  }
  return d;
}

// Length function from an ascending chain of finite symmetric sets:
// l(s) = min n with s below some element of T_n, 0 on idempotents. The chain
// is first augmented with pairwise products T_i T_{n-i} (iterated to a
// fixpoint) so that T_n T_m ⊆ T_{n+m} holds inside the closure.
inline LengthFunction filtration_length(const FiniteSemigroup& s,
                                        std::vector<std::vector<Element>> chain) {
  if (chain.empty()) throw validation_error("filtration_length: empty chain");
  const SemigroupOracle& oracle = *s.oracle;

  std::vector<std::set<Key, KeyLess>> tiers(chain.size());
  for (std::size_t n = 0; n < chain.size(); ++n) {
    for (const Element& t : chain[n]) {
      if (!s.find(t)) throw validation_error("filtration_length: chain element outside semigroup");
      tiers[n].insert(t.key);
      tiers[n].insert(oracle.invert(t).key);  // symmetrize
    }
    if (n > 0)
      for (const Key& k : tiers[n - 1]) tiers[n].insert(k);  // ascending
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n = 1; n < tiers.size(); ++n) {
      for (std::size_t i = 0; i + 1 <= n; ++i) {
        std::size_t j = n - 1 - i;  // tiers are 0-based: tier index i holds T_{i+1}
        if (i + j + 2 != n + 1) continue;
        std::vector<Key> add;
        for (const Key& a : tiers[i])
          for (const Key& b : tiers[j]) {
            Key ab = oracle.multiply(oracle.make(a), oracle.make(b)).key;
            if (!tiers[n].count(ab)) add.push_back(ab);
          }
        for (Key& k : add) {
          tiers[n].insert(std::move(k));
          changed = true;
        }
      }
    }
    if (changed)  // keep the chain ascending after augmentation
      for (std::size_t n = 1; n < tiers.size(); ++n)
        for (const Key& k : tiers[n - 1]) tiers[n].insert(k);
  }

  LengthFunction l;
  l.oracle = s.oracle;
  l.complete = s.complete();
  for (int idx = 0; idx < s.size(); ++idx) {
    Element e = s.elements[(std::size_t)idx];
    if (s.idempotent[(std::size_t)idx]) {
      l.values.push_back({e, 0});
      continue;
    }
    std::optional<std::uint64_t> val;
    for (std::size_t n = 0; n < tiers.size() && !val; ++n) {
      for (const Key& t : tiers[n]) {
        if (oracle.natural_leq(e, oracle.make(t))) {
          val = (std::uint64_t)(n + 1);
          break;
        }
      }
    }
    if (val)
      l.values.push_back({e, *val});
    else
      l.scope_exceeded.push_back(e);
  }
  l.sort();
  return l;
}

// ---------------------------------------------------------------------------
// Validation: metric axioms, right subinvariance, properness witnesses
// ---------------------------------------------------------------------------
enum class WitnessStatus { Found, NotFoundAtScale };

struct PropernessWitness {
  std::uint64_t r = 0;
  WitnessStatus status = WitnessStatus::NotFoundAtScale;
  std::vector<Element> witness;
};

struct ValidationReport {
  bool axioms_ok = true;
  std::vector<std::string> axiom_failures;
  bool right_subinvariant = true;
  std::vector<std::string> subinvariance_failures;
  std::vector<PropernessWitness> witnesses;
};

namespace detail {

inline std::vector<Element> scope_vector(const MetricTable& d) {
  std::vector<Element> out;
  for (auto& ct : d.classes)
    for (auto& m : ct.members) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy cover of `pairs` (canonical order): for each uncovered pair (x, y)
// pick the canonically least candidate f with f x = y, then discharge every
// pair it covers. Candidates are drawn from `candidates`.
inline std::optional<std::vector<Element>> greedy_witness(
    const SemigroupOracle& oracle, const std::vector<std::pair<Element, Element>>& pairs,
    const std::vector<Element>& candidates) {
  std::vector<bool> covered(pairs.size(), false);
  std::vector<Element> witness;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (covered[p]) continue;
    const auto& [x, y] = pairs[p];
    std::optional<Element> pick;
    for (const Element& f : candidates) {
      if (oracle.multiply(f, x) == y) {
        pick = f;
        break;  // candidates are in canonical order
      }
    }
    if (!pick) return std::nullopt;
    witness.push_back(*pick);
    for (std::size_t q = p; q < pairs.size(); ++q)
      if (!covered[q] && oracle.multiply(*pick, pairs[q].first) == pairs[q].second)
        covered[q] = true;
  }
  return witness;
}

inline std::vector<std::pair<Element, Element>> pairs_within(const MetricTable& d,
                                                             std::uint64_t r,
                                                             std::uint64_t max_level) {
  std::vector<std::pair<Element, Element>> pairs;
  for (auto& ct : d.classes)
    for (std::size_t i = 0; i < ct.members.size(); ++i)
      for (std::size_t j = 0; j < ct.members.size(); ++j) {
        if (i == j) continue;
        if (!ct.dist[i][j].is_finite() || ct.dist[i][j].value() > r) continue;
        if (d.oracle->scope_level(ct.members[i]) > max_level ||
            d.oracle->scope_level(ct.members[j]) > max_level)
          continue;
        pairs.push_back({ct.members[i], ct.members[j]});
      }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace detail

// Searches for a properness witness for radius r: a finite F with y ∈ Fx for
// every in-scope pair x != y, d(x, y) <= r. On Complete tables a greedy cover
// is definitive. On truncations the cover is computed from the inner half of
// the truncation (elements of scope level <= depth/2, candidates included)
// and must still cover the full scope; a cover that only works by reaching
// for ever-deeper elements is reported NotFoundAtScale.
inline PropernessWitness properness_witness(const MetricTable& d, std::uint64_t r) {
  const SemigroupOracle& oracle = *d.oracle;
  PropernessWitness w;
  w.r = r;
  std::vector<Element> scope = detail::scope_vector(d);

  if (d.complete) {
    auto pairs = detail::pairs_within(d, r, std::numeric_limits<std::uint64_t>::max());
    auto res = detail::greedy_witness(oracle, pairs, scope);
    if (res) {
      w.status = WitnessStatus::Found;
      w.witness = *res;
    }
    return w;
  }

  std::uint64_t inner = d.scope_depth / 2;
  std::vector<Element> inner_candidates;
  for (const Element& e : scope)
    if (oracle.scope_level(e) <= inner) inner_candidates.push_back(e);
  auto inner_pairs = detail::pairs_within(d, r, inner);
  auto res = detail::greedy_witness(oracle, inner_pairs, inner_candidates);
  if (!res) return w;
  // the inner witness must also cover the pairs near the frontier
  auto all_pairs = detail::pairs_within(d, r, std::numeric_limits<std::uint64_t>::max());
  for (auto& [x, y] : all_pairs) {
    bool ok = false;
    for (const Element& f : *res)
      if (oracle.multiply(f, x) == y) {
        ok = true;
        break;
      }
    if (!ok) return w;  // NotFoundAtScale
  }
  w.status = WitnessStatus::Found;
  w.witness = *res;
  return w;
}

// Checks that a user-supplied witness set covers every in-scope pair at
// distance <= r.
inline bool check_properness_witness(const MetricTable& d, std::uint64_t r,
                                     const std::vector<Element>& witness) {
  auto pairs = detail::pairs_within(d, r, std::numeric_limits<std::uint64_t>::max());
  for (auto& [x, y] : pairs) {
    bool ok = false;
    for (const Element& f : witness)
      if (d.oracle->multiply(f, x) == y) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

inline ValidationReport validate_metric(const MetricTable& d, std::uint64_t r_max) {
  const SemigroupOracle& oracle = *d.oracle;
  ValidationReport rep;

  // metric axioms inside each class block
  for (auto& ct : d.classes) {
    std::size_t m = ct.members.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (ct.dist[i][i] != ExtNat(0)) {
        rep.axioms_ok = false;
        rep.axiom_failures.push_back("d(x,x) != 0 at " + key_to_string(ct.members[i].key));
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j && ct.dist[i][j] == ExtNat(0)) {
          rep.axioms_ok = false;
          rep.axiom_failures.push_back("d(x,y) = 0 for x != y at " +
                                       key_to_string(ct.members[i].key));
        }
        if (ct.dist[i][j] != ct.dist[j][i]) {
          rep.axioms_ok = false;
          rep.axiom_failures.push_back("asymmetric at " + key_to_string(ct.members[i].key) + "," +
                                       key_to_string(ct.members[j].key));
        }
        for (std::size_t k = 0; k < m; ++k)
          if (ct.dist[i][j].is_finite() && ct.dist[j][k].is_finite() &&
              ct.dist[i][k] > ct.dist[i][j] + ct.dist[j][k]) {
            rep.axioms_ok = false;
            rep.axiom_failures.push_back("triangle inequality fails at " +
                                         key_to_string(ct.members[i].key));
          }
      }
    }
  }

  // right subinvariance: d(sx, tx) <= d(s, t) whenever both sides are in scope
  std::vector<Element> scope = detail::scope_vector(d);
  for (auto& ct : d.classes) {
    std::size_t m = ct.members.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j || !ct.dist[i][j].is_finite()) continue;
        for (const Element& x : scope) {
          Element sx = oracle.multiply(ct.members[i], x);
          Element tx = oracle.multiply(ct.members[j], x);
          auto psx = d.find(sx), ptx = d.find(tx);
          if (!psx || !ptx || psx->first != ptx->first) continue;
          ExtNat dst = d.classes[(std::size_t)psx->first]
                           .dist[(std::size_t)psx->second][(std::size_t)ptx->second];
          if (dst.is_finite() && dst > ct.dist[i][j]) {
            rep.right_subinvariant = false;
            rep.subinvariance_failures.push_back(
                "d(sx,tx) > d(s,t) for s=" + key_to_string(ct.members[i].key) +
                " t=" + key_to_string(ct.members[j].key) + " x=" + key_to_string(x.key));
          }
        }
      }
  }

  for (std::uint64_t r = 0; r <= r_max; ++r) rep.witnesses.push_back(properness_witness(d, r));
  return rep;
}

// ---------------------------------------------------------------------------
// Cylinders, finite upper bounds, coarse triviality
// ---------------------------------------------------------------------------
struct CylinderReport {
  std::vector<Element> cylinder;  // C_r = {s : 0 < l(s) <= r}, canonical order
  WitnessStatus fub_status = WitnessStatus::NotFoundAtScale;
  std::vector<Element> upper_bounds;
};

// Enumerates the r-cylinder and searches for a finite upper bound F in the
// natural partial order. On complete scopes F = the maximal elements of C_r.
// On truncations F is computed from the inner half and must still dominate
// the whole cylinder.
inline CylinderReport cylinder_and_fub(const LengthFunction& l, std::uint64_t r) {
  const SemigroupOracle& oracle = *l.oracle;
  CylinderReport rep;
  for (auto& [e, v] : l.values)
    if (v > 0 && v <= r) rep.cylinder.push_back(e);

  auto maximal_of = [&](const std::vector<Element>& set) {
    std::vector<Element> maxi;
    for (const Element& a : set) {
      bool dominated = false;
      for (const Element& b : set)
        if (!(a == b) && oracle.natural_leq(a, b)) {
          dominated = true;
          break;
        }
      if (!dominated) maxi.push_back(a);
    }
    return maxi;
  };
  auto dominates_all = [&](const std::vector<Element>& f, const std::vector<Element>& set) {
    for (const Element& a : set) {
      bool ok = false;
      for (const Element& b : f)
        if (oracle.natural_leq(a, b)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };

  if (l.complete) {
    rep.upper_bounds = maximal_of(rep.cylinder);
    rep.fub_status = WitnessStatus::Found;
    return rep;
  }
  std::uint64_t inner = l.scope_depth / 2;
  std::vector<Element> inner_cyl;
  for (const Element& e : rep.cylinder)
    if (oracle.scope_level(e) <= inner) inner_cyl.push_back(e);
  std::vector<Element> f = maximal_of(inner_cyl);
  if (dominates_all(f, rep.cylinder)) {
    rep.fub_status = WitnessStatus::Found;
    rep.upper_bounds = f;
  }
  return rep;
}

enum class VerdictStatus { Established, EvidenceAtScale, RefutedAtScale };

struct TrivialityVerdict {
  VerdictStatus status = VerdictStatus::EvidenceAtScale;
  bool trivial = false;       // meaningful when Established
  ExtNat supremum = ExtNat(0);  // sup of d over L-related in-scope pairs
};

// Coarse triviality: (S, d) coarsely equivalent to (E, d) iff component
// diameters are bounded. Established on complete scopes; otherwise the
// running supremum is evidence only.
inline TrivialityVerdict coarse_triviality(const MetricTable& d) {
  TrivialityVerdict v;
  ExtNat sup = ExtNat(0);
  for (auto& ct : d.classes)
    for (auto& row : ct.dist)
      for (ExtNat x : row)
        if (x > sup) sup = x;
  v.supremum = sup;
  if (d.complete) {
    v.status = VerdictStatus::Established;
    v.trivial = sup.is_finite();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Schutzenberger graphs
// ---------------------------------------------------------------------------
struct LabeledDigraph {
  struct Edge {
    int from, to;
    Key label;
    std::uint64_t weight;
    bool idempotent_loop;
  };
  std::vector<Element> vertices;
  std::vector<Edge> edges;
};

// Radius-R ball of the Schutzenberger graph of s: vertices in L_s, edges
// t -> xt for generators x with x*x t = t. Idempotent generators only
// contribute loops.
inline LabeledDigraph schuetzenberger_graph(const SemigroupOracle& oracle,
                                            const WeightedGenerators& gens, const Element& s,
                                            ExtNat radius) {
  auto ball = detail::dijkstra_ball(oracle, gens, s, radius);
  LabeledDigraph g;
  std::map<Key, int, KeyLess> vid;
  for (auto& [k, dist] : ball.dist) {
    vid[k] = (int)g.vertices.size();
    g.vertices.push_back(oracle.make(k));
  }
  for (auto& [k, dist] : ball.dist) {
    Element t = oracle.make(k);
    for (auto& [x, w] : gens.items) {
      Element xxt = oracle.multiply(oracle.multiply(oracle.invert(x), x), t);
      if (xxt != t) continue;
      Element xt = oracle.multiply(x, t);
      auto it = vid.find(xt.key);
      if (it == vid.end()) continue;
      g.edges.push_back({vid[k], it->second, x.key, w, xt == t && oracle.is_idempotent(x)});
    }
  }
  return g;
}

}  // namespace invgeo
