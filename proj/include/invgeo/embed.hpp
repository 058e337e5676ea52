#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "invgeo/metric.hpp"
#include "invgeo/oracle.hpp"

namespace invgeo {

struct FiniteMetricSpace {
  std::vector<std::string> points;
  std::vector<std::vector<int>> dist;  // symmetric, positive integers, 0 diagonal

  int size() const { return (int)points.size(); }

  int diameter() const {
    int d = 0;
    for (auto& row : dist)
      for (int v : row) d = std::max(d, v);
    return d;
  }

  void validate() const {
    int n = size();
    if ((int)dist.size() != n) throw validation_error("metric space: matrix size mismatch");
    for (int i = 0; i < n; ++i) {
      if ((int)dist[(std::size_t)i].size() != n)
        throw validation_error("metric space: matrix row size mismatch");
      if (dist[(std::size_t)i][(std::size_t)i] != 0)
        throw validation_error("metric space: nonzero diagonal");
      for (int j = 0; j < n; ++j) {
        if (i != j && dist[(std::size_t)i][(std::size_t)j] < 1)
          throw validation_error("metric space: off-diagonal distance < 1");
        if (dist[(std::size_t)i][(std::size_t)j] != dist[(std::size_t)j][(std::size_t)i])
          throw validation_error("metric space: asymmetric matrix");
        for (int k = 0; k < n; ++k)
          if (dist[(std::size_t)i][(std::size_t)k] >
              dist[(std::size_t)i][(std::size_t)j] + dist[(std::size_t)j][(std::size_t)k])
            throw validation_error("metric space: triangle inequality fails");
      }
    }
  }
};

// Level graphs and their matchings: Γₙ joins pairs with n−1 < d ≤ n, each
// color class of an edge coloring is a matching, and each matching extends
// to a total involution of the point set (fixed off the matched pairs).
struct MatchingFamily {
  struct Level {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<std::pair<int, int>>> matchings;
    std::vector<std::vector<int>> involutions;  // per matching: permutation of points
    int max_degree = 0;
  };
  std::vector<Level> levels;  // index k holds level n = k+1
};

namespace detail {

// Greedy edge coloring, edges visited in nonincreasing endpoint-degree
// order; uses at most 2Δ−1 colors.
inline std::vector<int> color_edges_greedy(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> degree((std::size_t)n, 0);
  for (auto& [u, v] : edges) {
    ++degree[(std::size_t)u];
    ++degree[(std::size_t)v];
  }
  std::vector<int> order(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = degree[(std::size_t)edges[(std::size_t)a].first] +
             degree[(std::size_t)edges[(std::size_t)a].second];
    int db = degree[(std::size_t)edges[(std::size_t)b].first] +
             degree[(std::size_t)edges[(std::size_t)b].second];
    if (da != db) return da > db;
    return edges[(std::size_t)a] < edges[(std::size_t)b];
  });
  std::vector<std::vector<bool>> used((std::size_t)n);
  std::vector<int> color(edges.size(), -1);
  int palette = 0;
  for (auto& row : used) row.assign((std::size_t)(2 * *std::max_element(degree.begin(), degree.end()) + 1), false);
  for (int ei : order) {
    auto [u, v] = edges[(std::size_t)ei];
    int c = 0;
    while (used[(std::size_t)u][(std::size_t)c] || used[(std::size_t)v][(std::size_t)c]) ++c;
    color[(std::size_t)ei] = c;
    used[(std::size_t)u][(std::size_t)c] = used[(std::size_t)v][(std::size_t)c] = true;
    palette = std::max(palette, c + 1);
  }
  return color;
}

// Misra–Gries edge coloring with Δ+1 colors.
inline std::vector<int> color_edges_vizing(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> degree((std::size_t)n, 0);
  for (auto& [u, v] : edges) {
    ++degree[(std::size_t)u];
    ++degree[(std::size_t)v];
  }
  int delta = edges.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  int colors = delta + 1;
  // at[v][c] = neighbor joined to v by an edge of color c, or -1
  std::vector<std::vector<int>> at((std::size_t)n, std::vector<int>((std::size_t)colors, -1));
  std::map<std::pair<int, int>, int> edge_color;

  auto free_color = [&](int v) {
    for (int c = 0; c < colors; ++c)
      if (at[(std::size_t)v][(std::size_t)c] == -1) return c;
    throw std::logic_error("vizing: no free color");
  };
  auto set_color = [&](int u, int v, int c) {
    at[(std::size_t)u][(std::size_t)c] = v;
    at[(std::size_t)v][(std::size_t)c] = u;
    edge_color[{std::min(u, v), std::max(u, v)}] = c;
  };
  // clear only entries still pointing at each other: path inversion rewrites
  // adjacent edges and must not clobber a freshly written slot
  auto unset_color = [&](int u, int v, int c) {
    if (at[(std::size_t)u][(std::size_t)c] == v) at[(std::size_t)u][(std::size_t)c] = -1;
    if (at[(std::size_t)v][(std::size_t)c] == u) at[(std::size_t)v][(std::size_t)c] = -1;
  };

  for (auto& [u0, v0] : edges) {
    int u = u0, v = v0;
    // maximal fan of u starting at v
    std::vector<int> fan{v};
    std::vector<bool> in_fan((std::size_t)n, false);
    in_fan[(std::size_t)v] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      int last = fan.back();
      for (int c = 0; c < colors; ++c) {
        int w = at[(std::size_t)u][(std::size_t)c];
        if (w == -1 || in_fan[(std::size_t)w]) continue;
        // color(u, w) = c must be free on the current fan end
        if (at[(std::size_t)last][(std::size_t)c] == -1) {
          fan.push_back(w);
          in_fan[(std::size_t)w] = true;
          grew = true;
          break;
        }
      }
    }
    int c = free_color(u);
    int d = free_color(fan.back());
    if (c != d) {
      // invert the cd-path starting at u: its first edge has color d and the
      // colors alternate; swap c and d along it
      int prev = u, cur = at[(std::size_t)u][(std::size_t)d];
      int want = c;  // color the traversed edge will take
      while (cur != -1) {
        int old = (want == c) ? d : c;
        int nxt = at[(std::size_t)cur][(std::size_t)want];
        unset_color(prev, cur, old);
        set_color(prev, cur, want);
        prev = cur;
        cur = nxt;
        want = old;
      }
    }
    // pick the first fan prefix, still valid under the current coloring,
    // whose end vertex has d free; rotate it and color (u, fan[j]) with d
    std::size_t j = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0) {
        auto it = edge_color.find({std::min(u, fan[i]), std::max(u, fan[i])});
        if (it == edge_color.end()) break;
        if (at[(std::size_t)fan[i - 1]][(std::size_t)it->second] != -1) break;
      }
      if (at[(std::size_t)fan[i]][(std::size_t)d] == -1) {
        j = i;
        break;
      }
    }
    if (j == fan.size()) throw std::logic_error("vizing: no rotatable fan prefix");
    for (std::size_t i = 0; i < j; ++i) {
      int ci = edge_color[{std::min(u, fan[i + 1]), std::max(u, fan[i + 1])}];
      unset_color(u, fan[i + 1], ci);
      set_color(u, fan[i], ci);
    }
    set_color(u, fan[j], d);
  }

  std::vector<int> color(edges.size(), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    color[i] = edge_color.at({std::min(a, b), std::max(a, b)});
  }
  return color;
}

}  // namespace detail

// Γₙ for 1 ≤ n ≤ diameter, edge-colored into matchings, one total involution
// per matching. Greedy coloring by default; `exact_colorer` switches to
// Misra–Gries with Δ+1 colors.
inline MatchingFamily build_matchings(const FiniteMetricSpace& x, bool exact_colorer = false) {
  x.validate();
  int n = x.size();
  MatchingFamily fam;
  for (int level = 1; level <= x.diameter(); ++level) {
    MatchingFamily::Level lv;
    lv.n = level;
    std::vector<int> degree((std::size_t)n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int d = x.dist[(std::size_t)i][(std::size_t)j];
        if (level - 1 < d && d <= level) {
          lv.edges.push_back({i, j});
          ++degree[(std::size_t)i];
          ++degree[(std::size_t)j];
        }
      }
    lv.max_degree = lv.edges.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
    if (!lv.edges.empty()) {
      std::vector<int> color = exact_colorer ? detail::color_edges_vizing(n, lv.edges)
                                             : detail::color_edges_greedy(n, lv.edges);
      int palette = 1 + *std::max_element(color.begin(), color.end());
      lv.matchings.assign((std::size_t)palette, {});
      for (std::size_t e = 0; e < lv.edges.size(); ++e)
        lv.matchings[(std::size_t)color[e]].push_back(lv.edges[e]);
      for (auto& m : lv.matchings) {
        std::sort(m.begin(), m.end());
        std::vector<int> perm((std::size_t)n);
        for (int i = 0; i < n; ++i) perm[(std::size_t)i] = i;
        for (auto& [a, b] : m) {
          perm[(std::size_t)a] = b;
          perm[(std::size_t)b] = a;
        }
        lv.involutions.push_back(std::move(perm));
      }
    }
    fam.levels.push_back(std::move(lv));
  }
  return fam;
}

// Φ: y ↦ γ_{y,x} realizes X as the L-class of id_{x} inside the symmetric
// inverse monoid on the points of X; the induced distance is the weighted
// shortest path over involution edges {u, φ(u)} of weight n.
struct EmbeddingResult {
  FiniteMetricSpace space;
  int basepoint = 0;
  MatchingFamily matchings;
  std::shared_ptr<SymmetricInverseMonoid> monoid;
  std::vector<Element> phi;       // phi[i] = γ_{point i, basepoint}
  WeightedGenerators generators;  // involutions (weight n) and singleton identities
  MetricTable induced;            // the single L-class table over phi
};

inline EmbeddingResult embed_space(const FiniteMetricSpace& x, int basepoint = 0,
                                   bool exact_colorer = false) {
  x.validate();
  if (basepoint < 0 || basepoint >= x.size())
    throw validation_error("embed_space: basepoint out of range");
  EmbeddingResult res;
  res.space = x;
  res.basepoint = basepoint;
  res.matchings = build_matchings(x, exact_colorer);
  int n = x.size();
  res.monoid = std::make_shared<SymmetricInverseMonoid>(n == 0 ? 1 : n);
  res.generators.oracle = res.monoid.get();

  for (int i = 0; i < n; ++i)
    res.phi.push_back(res.monoid->gamma(i + 1, basepoint + 1));
  for (auto& lv : res.matchings.levels)
    for (auto& perm : lv.involutions) {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i) pairs.push_back({i + 1, perm[(std::size_t)i] + 1});
      res.generators.add(res.monoid->from_pairs(pairs), (std::uint64_t)lv.n);
    }
  for (int i = 0; i < n; ++i)
    res.generators.add(res.monoid->partial_identity({i + 1}), 1);

  // shortest paths on X over involution edges; each Γₙ edge has weight n
  std::vector<std::vector<ExtNat>> dist((std::size_t)n,
                                        std::vector<ExtNat>((std::size_t)n, ExtNat::infinity()));
  std::vector<std::vector<std::pair<int, std::uint64_t>>> adj((std::size_t)n);
  for (auto& lv : res.matchings.levels)
    for (auto& [a, b] : lv.edges) {
      adj[(std::size_t)a].push_back({b, (std::uint64_t)lv.n});
      adj[(std::size_t)b].push_back({a, (std::uint64_t)lv.n});
    }
  for (int src = 0; src < n; ++src) {
    using QItem = std::pair<std::uint64_t, int>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
    dist[(std::size_t)src][(std::size_t)src] = ExtNat(0);
    pq.push({0, src});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (dist[(std::size_t)src][(std::size_t)u] != ExtNat(du)) continue;
      for (auto& [v, w] : adj[(std::size_t)u]) {
        ExtNat dv(du + w);
        if (dv < dist[(std::size_t)src][(std::size_t)v]) {
          dist[(std::size_t)src][(std::size_t)v] = dv;
          pq.push({du + w, v});
        }
      }
    }
  }

  MetricTable::ClassTable ct;
  ct.class_key = res.monoid->partial_identity({basepoint + 1}).key;
  // keys γ_{y,x} = [x, y] share the first coordinate, so canonical order on
  // the class is point order
  ct.members = res.phi;
  ct.dist = dist;
  ct.frontier_weight.assign((std::size_t)n, ExtNat::infinity());
  res.induced.oracle = res.monoid.get();
  res.induced.complete = true;
  for (int i = 0; i < n; ++i) res.induced.index[res.phi[(std::size_t)i].key] = {0, i};
  res.induced.classes.push_back(std::move(ct));
  return res;
}

struct DistortionReport {
  bool ok = true;
  std::vector<std::string> violations;
  // per observed d_X value r: min and max induced distance over those pairs
  std::vector<std::pair<int, ExtNat>> rho_minus;
  std::vector<std::pair<int, ExtNat>> rho_plus;
};

// Checks d_X(y,z) ≤ d(Φ(y), Φ(z)) ≤ d_X(y,z) + 1 on every pair.
inline DistortionReport verify_distortion(const EmbeddingResult& e) {
  DistortionReport rep;
  int n = e.space.size();
  std::map<int, std::pair<ExtNat, ExtNat>> rho;  // r -> (min, max)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int dx = e.space.dist[(std::size_t)i][(std::size_t)j];
      ExtNat dphi = e.induced.classes[0].dist[(std::size_t)i][(std::size_t)j];
      if (!dphi.is_finite() || dphi.value() < (std::uint64_t)dx ||
          dphi.value() > (std::uint64_t)dx + 1) {
        rep.ok = false;
        rep.violations.push_back("pair (" + e.space.points[(std::size_t)i] + "," +
                                 e.space.points[(std::size_t)j] + "): d_X=" + std::to_string(dx) +
                                 " induced=" + dphi.to_string());
      }
      auto it = rho.find(dx);
      if (it == rho.end())
        rho[dx] = {dphi, dphi};
      else {
        if (dphi < it->second.first) it->second.first = dphi;
        if (dphi > it->second.second) it->second.second = dphi;
      }
    }
  for (auto& [r, mm] : rho) {
    rep.rho_minus.push_back({r, mm.first});
    rep.rho_plus.push_back({r, mm.second});
  }
  return rep;
}

}  // namespace invgeo
