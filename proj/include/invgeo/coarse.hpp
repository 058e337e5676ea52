#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "invgeo/closure.hpp"
#include "invgeo/metric.hpp"

namespace invgeo {

// ---------------------------------------------------------------------------
// r-components
// ---------------------------------------------------------------------------
struct RComponentPartition {
  struct Block {
    std::vector<Element> members;  // canonical order
    ExtNat diameter;
    std::uint64_t size() const { return (std::uint64_t)members.size(); }
    // closed = no member can leave the table's element set in one generator
    // step of weight <= r; a closed block is the exact r-component.
    bool closed = false;
  };
  std::uint64_t r = 0;
  ExtNat scope_radius = ExtNat::infinity();
  std::vector<Block> blocks;  // ordered by least member key
};

// Union-find over in-scope pairs at distance <= r, classwise. The optional
// shuffle seed permutes the union order; the resulting partition must not
// depend on it.
inline RComponentPartition r_components(const MetricTable& d, std::uint64_t r,
                                        std::uint64_t shuffle_seed = 0) {
  RComponentPartition part;
  part.r = r;
  part.scope_radius = d.radius;

  for (auto& ct : d.classes) {
    std::size_t m = ct.members.size();
    std::vector<int> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = (int)i;
    auto find = [&](int x) {
      while (parent[(std::size_t)x] != x) {
        parent[(std::size_t)x] = parent[(std::size_t)parent[(std::size_t)x]];
        x = parent[(std::size_t)x];
      }
      return x;
    };
    std::vector<std::pair<int, int>> joins;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (ct.dist[i][j].is_finite() && ct.dist[i][j].value() <= r)
          joins.push_back({(int)i, (int)j});
    if (shuffle_seed != 0) {
      std::mt19937_64 rng(shuffle_seed);
      std::shuffle(joins.begin(), joins.end(), rng);
    }
    for (auto [a, b] : joins) {
      int ra = find(a), rb = find(b);
      if (ra != rb) parent[(std::size_t)std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<int, RComponentPartition::Block> by_root;
    for (std::size_t i = 0; i < m; ++i) by_root[find((int)i)].members.push_back(ct.members[i]);
    for (auto& [root, block] : by_root) {
      block.diameter = ExtNat(0);
      block.closed = true;
      for (const Element& a : block.members) {
        auto pa = d.find(a);
        ExtNat fw = ct.frontier_weight[(std::size_t)pa->second];
        if (fw.is_finite() && fw.value() <= r) block.closed = false;
        for (const Element& b : block.members) {
          ExtNat dist = d.distance(a, b);
          if (dist > block.diameter) block.diameter = dist;
        }
      }
      if (!d.complete && d.radius.is_finite() && r > d.radius.value())
        block.closed = false;  // joins beyond the certification radius
      part.blocks.push_back(std::move(block));
    }
  }
  std::sort(part.blocks.begin(), part.blocks.end(),
            [](const auto& a, const auto& b) { return a.members[0] < b.members[0]; });
  return part;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------
enum class PropertyTag { AsDim0, Sparse, LocallyFinite, LocallyLFinite, CoarselyTrivial };

struct CoarseVerdict {
  PropertyTag property;
  VerdictStatus status = VerdictStatus::EvidenceAtScale;
  // For Established this is the verdict; for EvidenceAtScale the direction
  // the evidence points.
  bool holds = false;
  std::uint64_t scope = 0;
  std::vector<Element> witness;  // long r-path, or a growing L-class
  std::uint64_t witness_scale = 0;
  std::vector<std::pair<std::string, std::string>> statistics;
};

namespace detail {

// Lexicographically least maximal r-path in a block: start at the least
// member, repeatedly step to the least unvisited member within distance r.
inline std::vector<Element> greedy_r_path(const MetricTable& d,
                                          const RComponentPartition::Block& block,
                                          std::uint64_t r) {
  std::vector<Element> path;
  std::set<Key, KeyLess> used;
  Element cur = block.members[0];
  path.push_back(cur);
  used.insert(cur.key);
  bool extended = true;
  while (extended) {
    extended = false;
    for (const Element& next : block.members) {
      if (used.count(next.key)) continue;
      ExtNat dist = d.distance(cur, next);
      if (dist.is_finite() && dist.value() <= r && dist.value() > 0) {
        path.push_back(next);
        used.insert(next.key);
        cur = next;
        extended = true;
        break;
      }
    }
  }
  return path;
}

// Re-validates a path witness by independent shortest-path recomputation.
inline bool revalidate_path(const SemigroupOracle& oracle, const WeightedGenerators& gens,
                            const std::vector<Element>& path, std::uint64_t r) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto ball = dijkstra_ball(oracle, gens, path[i], ExtNat(r));
    auto it = ball.dist.find(path[i + 1].key);
    if (it == ball.dist.end() || it->second > r || it->second == 0) return false;
  }
  return true;
}

inline std::uint64_t inner_depth(const MetricTable& d) { return d.scope_depth / 2; }

// Partition restricted to elements of scope level <= max_level.
inline MetricTable restrict_table(const MetricTable& d, std::uint64_t max_level) {
  std::vector<Element> keep;
  for (auto& ct : d.classes)
    for (auto& m : ct.members)
      if (d.oracle->scope_level(m) <= max_level) keep.push_back(m);
  MetricTable sub;
  sub.oracle = d.oracle;
  sub.complete = false;
  sub.radius = d.radius;
  sub.scope_depth = max_level;
  std::map<Key, std::vector<Element>, KeyLess> by_class;
  for (const Element& e : keep)
    by_class[d.oracle->multiply(d.oracle->invert(e), e).key].push_back(e);
  for (auto& [ck, members] : by_class) {
    MetricTable::ClassTable ct;
    ct.class_key = ck;
    std::sort(members.begin(), members.end());
    ct.members = members;
    std::size_t m = members.size();
    ct.dist.assign(m, std::vector<ExtNat>(m, ExtNat::infinity()));
    ct.frontier_weight.assign(m, ExtNat::infinity());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) ct.dist[i][j] = d.distance(members[i], members[j]);
    int ci = (int)sub.classes.size();
    for (std::size_t i = 0; i < m; ++i) sub.index[members[i].key] = {ci, (int)i};
    sub.classes.push_back(std::move(ct));
  }
  return sub;
}

}  // namespace detail

// Asymptotic dimension 0 = uniformly bounded r-components for every r. On a
// Complete scope the verdict is Established. On truncations the maximal
// block size and diameter over the inner half of the scope are compared with
// the full scope; growth yields RefutedAtScale with a long r-path witness,
// optionally re-validated against the generators.
inline CoarseVerdict asdim0_evidence(const MetricTable& d, const std::vector<std::uint64_t>& scales,
                                     const WeightedGenerators* gens = nullptr) {
  CoarseVerdict v;
  v.property = PropertyTag::AsDim0;
  v.scope = d.scope_depth;

  if (d.complete) {
    v.status = VerdictStatus::Established;
    v.holds = true;
    for (std::uint64_t r : scales) {
      auto part = r_components(d, r);
      ExtNat maxd(0);
      std::uint64_t maxs = 0;
      for (auto& b : part.blocks) {
        if (b.diameter > maxd) maxd = b.diameter;
        maxs = std::max(maxs, b.size());
      }
      v.statistics.push_back({"r=" + std::to_string(r) + " max_size", std::to_string(maxs)});
      v.statistics.push_back({"r=" + std::to_string(r) + " max_diameter", maxd.to_string()});
    }
    return v;
  }

  MetricTable inner = detail::restrict_table(d, detail::inner_depth(d));
  v.status = VerdictStatus::EvidenceAtScale;
  v.holds = true;
  for (std::uint64_t r : scales) {
    auto full = r_components(d, r);
    auto half = r_components(inner, r);
    std::uint64_t full_size = 0, half_size = 0;
    ExtNat full_diam(0), half_diam(0);
    const RComponentPartition::Block* extremal = nullptr;
    for (auto& b : full.blocks) {
      if (b.size() > full_size || (b.size() == full_size && extremal == nullptr)) {
        full_size = std::max(full_size, b.size());
        extremal = &b;
      }
      if (b.diameter > full_diam) full_diam = b.diameter;
    }
    for (auto& b : half.blocks) {
      half_size = std::max(half_size, b.size());
      if (b.diameter > half_diam) half_diam = b.diameter;
    }
    v.statistics.push_back({"r=" + std::to_string(r) + " max_size_full", std::to_string(full_size)});
    v.statistics.push_back(
        {"r=" + std::to_string(r) + " max_size_inner", std::to_string(half_size)});
    v.statistics.push_back({"r=" + std::to_string(r) + " max_diameter_full", full_diam.to_string()});
    v.statistics.push_back(
        {"r=" + std::to_string(r) + " max_diameter_inner", half_diam.to_string()});
    bool growing = full_size > half_size || full_diam > half_diam;
    if (growing && extremal != nullptr) {
      v.holds = false;
      if (v.status != VerdictStatus::RefutedAtScale) {
        std::vector<Element> path = detail::greedy_r_path(d, *extremal, r);
        if (gens == nullptr || detail::revalidate_path(*d.oracle, *gens, path, r)) {
          v.status = VerdictStatus::RefutedAtScale;
          v.witness = std::move(path);
          v.witness_scale = r;
        }
      }
    }
  }
  return v;
}

// Sparse = every r-component finite. Closed blocks are exact components and
// finite by construction; blocks touching the frontier stay indeterminate,
// and their presence is negative evidence.
inline CoarseVerdict sparse_evidence(const MetricTable& d,
                                     const std::vector<std::uint64_t>& scales) {
  CoarseVerdict v;
  v.property = PropertyTag::Sparse;
  v.scope = d.scope_depth;
  if (d.complete) {
    v.status = VerdictStatus::Established;
    v.holds = true;
    for (std::uint64_t r : scales) {
      auto part = r_components(d, r);
      std::uint64_t maxs = 0;
      for (auto& b : part.blocks) maxs = std::max(maxs, b.size());
      v.statistics.push_back({"r=" + std::to_string(r) + " max_size", std::to_string(maxs)});
    }
    return v;
  }
  v.status = VerdictStatus::EvidenceAtScale;
  v.holds = true;
  for (std::uint64_t r : scales) {
    auto part = r_components(d, r);
    std::uint64_t closed = 0, open = 0, max_closed = 0;
    for (auto& b : part.blocks) {
      if (b.closed) {
        ++closed;
        max_closed = std::max(max_closed, b.size());
      } else {
        ++open;
        if (v.witness.empty()) {
          v.witness = b.members;  // least indeterminate block as evidence
          v.witness_scale = r;
        }
      }
    }
    if (open > 0) v.holds = false;
    v.statistics.push_back({"r=" + std::to_string(r) + " closed_blocks", std::to_string(closed)});
    v.statistics.push_back(
        {"r=" + std::to_string(r) + " indeterminate_blocks", std::to_string(open)});
    v.statistics.push_back(
        {"r=" + std::to_string(r) + " max_closed_size", std::to_string(max_closed)});
  }
  return v;
}

// ---------------------------------------------------------------------------
// ρ± coarse-equivalence profiles
// ---------------------------------------------------------------------------
struct CoarseProfile {
  // over observed finite values r of the first metric
  std::vector<std::pair<std::uint64_t, ExtNat>> rho_minus;
  std::vector<std::pair<std::uint64_t, ExtNat>> rho_plus;
  bool sandwich_ok = true;
  std::vector<std::string> failures;

  ExtNat rho_plus_at(std::uint64_t r) const {
    ExtNat best(0);
    bool seen = false;
    for (auto& [k, val] : rho_plus)
      if (k <= r) {
        best = val;
        seen = true;
      }
    return seen ? best : ExtNat(0);
  }
};

// Empirical ρ₋(r) = min d₂ over pairs with d ≥ r, ρ₊(r) = max d₂ over pairs
// with d ≤ r, both over the observed values of d. Verifies the sandwich
// ρ₋(d(x,y)) ≤ d₂(x,y) ≤ ρ₊(d(x,y)) on every pair.
inline CoarseProfile coarse_profile(const MetricTable& d, const MetricTable& d2) {
  if (d.index.size() != d2.index.size())
    throw alignment_error("coarse_profile: element scopes differ");
  for (auto& [k, pos] : d.index)
    if (!d2.index.count(k)) throw alignment_error("coarse_profile: element scopes differ");

  struct PairObs {
    std::uint64_t r;
    ExtNat v;
  };
  std::vector<PairObs> obs;
  for (auto& ct : d.classes)
    for (std::size_t i = 0; i < ct.members.size(); ++i)
      for (std::size_t j = 0; j < ct.members.size(); ++j) {
        if (!ct.dist[i][j].is_finite()) continue;
        obs.push_back({ct.dist[i][j].value(), d2.distance(ct.members[i], ct.members[j])});
      }

  std::set<std::uint64_t> values;
  for (auto& o : obs) values.insert(o.r);
  CoarseProfile p;
  for (std::uint64_t r : values) {
    ExtNat lo = ExtNat::infinity(), hi(0);
    for (auto& o : obs) {
      if (o.r >= r && o.v < lo) lo = o.v;
      if (o.r <= r && o.v > hi) hi = o.v;
    }
    p.rho_minus.push_back({r, lo});
    p.rho_plus.push_back({r, hi});
  }
  for (auto& o : obs) {
    ExtNat lo = ExtNat::infinity(), hi(0);
    for (auto& [k, val] : p.rho_minus)
      if (k == o.r) lo = val;
    for (auto& [k, val] : p.rho_plus)
      if (k == o.r) hi = val;
    if (o.v < lo || o.v > hi) {
      p.sandwich_ok = false;
      p.failures.push_back("pair with d=" + std::to_string(o.r) + " d2=" + o.v.to_string());
    }
  }
  return p;
}

// Growth flag across deepening truncations: ρ₊(r) strictly increasing along
// the sequence means d₂ is not bounded by any function of d at scale r.
inline bool rho_plus_unbounded(const std::vector<CoarseProfile>& profiles, std::uint64_t r) {
  if (profiles.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < profiles.size(); ++i) {
    ExtNat a = profiles[i].rho_plus_at(r), b = profiles[i + 1].rho_plus_at(r);
    if (!a.is_finite() || !b.is_finite() || b <= a) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Local finiteness probes
// ---------------------------------------------------------------------------
inline CoarseVerdict local_finiteness_probe(const SemigroupOracle& oracle,
                                            const std::vector<std::vector<Element>>& generator_sets,
                                            std::uint64_t cap) {
  CoarseVerdict v;
  v.property = PropertyTag::LocallyFinite;
  v.scope = cap;
  v.holds = true;
  bool all_complete = true;
  for (std::size_t g = 0; g < generator_sets.size(); ++g) {
    auto fs = generate_closure(oracle, generator_sets[g], cap);
    std::string tag = "set" + std::to_string(g);
    v.statistics.push_back({tag + " size", std::to_string(fs.size())});
    v.statistics.push_back({tag + " status", fs.complete() ? "Complete" : "Truncated"});
    if (!fs.complete()) {
      all_complete = false;
      v.holds = false;
      // growth of the closure per word length
      std::map<std::uint64_t, std::uint64_t> per_level;
      for (std::uint64_t wl : fs.word_length) ++per_level[wl];
      std::uint64_t cum = 0;
      for (auto& [lvl, cnt] : per_level) {
        cum += cnt;
        v.statistics.push_back({tag + " size_at_length_" + std::to_string(lvl),
                                std::to_string(cum)});
      }
    }
  }
  if (oracle.is_globally_finite() && all_complete) {
    v.status = VerdictStatus::Established;
  } else {
    v.status = VerdictStatus::EvidenceAtScale;
  }
  return v;
}

// Local L-finiteness: track L-class sizes across word-length frontiers of
// each closure. A class first seen in the inner half that still grows
// between the last two complete levels is a refutation witness; otherwise
// the evidence is positive.
inline CoarseVerdict local_L_finiteness_probe(
    const SemigroupOracle& oracle, const std::vector<std::vector<Element>>& generator_sets,
    std::uint64_t cap) {
  CoarseVerdict v;
  v.property = PropertyTag::LocallyLFinite;
  v.scope = cap;
  v.holds = true;
  bool all_complete = true;
  for (std::size_t g = 0; g < generator_sets.size(); ++g) {
    auto fs = generate_closure(oracle, generator_sets[g], cap);
    std::string tag = "set" + std::to_string(g);
    if (!fs.complete()) all_complete = false;

    std::uint64_t max_level = 0;
    for (std::uint64_t wl : fs.word_length) max_level = std::max(max_level, wl);
    // the last BFS level of a truncated closure may be partially filled
    std::uint64_t top = fs.complete() ? max_level : (max_level > 0 ? max_level - 1 : 0);
    if (top < 2) {
      v.statistics.push_back({tag + " levels", std::to_string(top)});
      continue;
    }

    struct ClassTrack {
      std::uint64_t first_seen = 0;
      std::uint64_t at_prev = 0, at_top = 0;
      std::vector<Element> members;
    };
    std::map<Key, ClassTrack, KeyLess> classes;
    for (int i = 0; i < fs.size(); ++i) {
      std::uint64_t wl = fs.word_length[(std::size_t)i];
      if (wl > top) continue;
      Element e = fs.elements[(std::size_t)i];
      Key ck = oracle.multiply(oracle.invert(e), e).key;
      auto& tr = classes[ck];
      if (tr.members.empty()) tr.first_seen = wl;
      tr.first_seen = std::min(tr.first_seen, wl);
      tr.members.push_back(e);
      if (wl <= top - 1) ++tr.at_prev;
      ++tr.at_top;
    }
    std::uint64_t growing = 0, stable = 0;
    for (auto& [ck, tr] : classes) {
      if (2 * tr.first_seen >= top) continue;  // too close to the frontier to judge
      if (tr.at_top > tr.at_prev) {
        ++growing;
        v.holds = false;
        if (v.witness.empty()) {
          std::sort(tr.members.begin(), tr.members.end());
          v.witness = tr.members;
          v.witness_scale = top;
        }
      } else {
        ++stable;
      }
    }
    v.statistics.push_back({tag + " classes_stable", std::to_string(stable)});
    v.statistics.push_back({tag + " classes_growing", std::to_string(growing)});
  }
  if (oracle.is_globally_finite() && all_complete) {
    v.status = VerdictStatus::Established;
  } else {
    v.status = v.holds ? VerdictStatus::EvidenceAtScale : VerdictStatus::RefutedAtScale;
  }
  return v;
}

}  // namespace invgeo
