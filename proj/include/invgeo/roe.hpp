#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "invgeo/closure.hpp"
#include "invgeo/metric.hpp"

namespace invgeo {

// Dense operator on ℓ²(indices), row-major. Entries with modulus below the
// tolerance count as zero. Sums of 0/±1 entries stay exact in doubles, so
// representation-law checks on Wagner-Preston matrices hold with equality.
struct BandOperator {
  std::vector<Element> indices;  // canonical order
  std::vector<std::complex<double>> a;
  double tolerance = 1e-9;

  int n() const { return (int)indices.size(); }

  static BandOperator zero(std::vector<Element> indices, double tol = 1e-9) {
    BandOperator t;
    t.indices = std::move(indices);
    std::sort(t.indices.begin(), t.indices.end());
    t.a.assign((std::size_t)t.n() * (std::size_t)t.n(), {0.0, 0.0});
    t.tolerance = tol;
    return t;
  }

  static BandOperator identity(std::vector<Element> indices, double tol = 1e-9) {
    BandOperator t = zero(std::move(indices), tol);
    for (int i = 0; i < t.n(); ++i) t.at(i, i) = 1.0;
    return t;
  }

  std::complex<double>& at(int row, int col) {
    return a[(std::size_t)row * (std::size_t)n() + (std::size_t)col];
  }
  std::complex<double> at(int row, int col) const {
    return a[(std::size_t)row * (std::size_t)n() + (std::size_t)col];
  }

  bool aligned_with(const BandOperator& o) const {
    if (n() != o.n()) return false;
    for (int i = 0; i < n(); ++i)
      if (indices[(std::size_t)i] != o.indices[(std::size_t)i]) return false;
    return true;
  }

  BandOperator adjoint() const {
    BandOperator t = zero(indices, tolerance);
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) t.at(i, j) = std::conj(at(j, i));
    return t;
  }

  BandOperator operator*(const BandOperator& o) const {
    if (!aligned_with(o)) throw alignment_error("operator product: index sets differ");
    BandOperator t = zero(indices, tolerance);
    for (int i = 0; i < n(); ++i)
      for (int k = 0; k < n(); ++k) {
        std::complex<double> aik = at(i, k);
        if (aik == std::complex<double>{}) continue;
        for (int j = 0; j < n(); ++j) t.at(i, j) += aik * o.at(k, j);
      }
    return t;
  }

  BandOperator operator-(const BandOperator& o) const {
    if (!aligned_with(o)) throw alignment_error("operator difference: index sets differ");
    BandOperator t = zero(indices, tolerance);
    for (std::size_t i = 0; i < a.size(); ++i) t.a[i] = a[i] - o.a[i];
    return t;
  }

  BandOperator operator+(const BandOperator& o) const {
    if (!aligned_with(o)) throw alignment_error("operator sum: index sets differ");
    BandOperator t = zero(indices, tolerance);
    for (std::size_t i = 0; i < a.size(); ++i) t.a[i] = a[i] + o.a[i];
    return t;
  }
};

inline double frobenius_norm(const BandOperator& t) {
  double s = 0.0;
  for (auto& z : t.a) s += std::norm(z);
  return std::sqrt(s);
}

// Largest singular value via power iteration on T*T, fixed seed and 200
// iterations for reproducibility. The Frobenius norm is a certified upper
// bound for this.
inline double operator_norm(const BandOperator& t) {
  int n = t.n();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> v((std::size_t)n);
  for (auto& z : v) z = {u(rng), u(rng)};
  auto apply = [&](const BandOperator& m, const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> y((std::size_t)n, std::complex<double>{});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[(std::size_t)i] += m.at(i, j) * x[(std::size_t)j];
    return y;
  };
  BandOperator ts = t.adjoint();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    auto w = apply(ts, apply(t, v));
    double norm = 0.0;
    for (auto& z : w) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (auto& z : w) z /= norm;
    lambda = norm;
    v = std::move(w);
  }
  return std::sqrt(lambda);
}

// Wagner-Preston partial isometry of s: entry (st, t) = 1 for every t in the
// semigroup with s*s t = t. At most one 1 per row and per column.
inline BandOperator wagner_preston(const FiniteSemigroup& s, const Element& e) {
  if (!s.complete()) throw validation_error("wagner_preston: requires a Complete semigroup");
  std::vector<Element> idx = s.elements;
  std::sort(idx.begin(), idx.end());
  BandOperator v = BandOperator::zero(idx);
  const SemigroupOracle& oracle = *s.oracle;
  Element ss = oracle.multiply(oracle.invert(e), e);
  std::map<Key, int, KeyLess> pos;
  for (int i = 0; i < v.n(); ++i) pos[v.indices[(std::size_t)i].key] = i;
  for (int j = 0; j < v.n(); ++j) {
    const Element& t = v.indices[(std::size_t)j];
    if (oracle.multiply(ss, t) != t) continue;
    Element st = oracle.multiply(e, t);
    auto it = pos.find(st.key);
    if (it == pos.end()) throw validation_error("wagner_preston: product left the index set");
    v.at(it->second, j) = 1.0;
  }
  return v;
}

// Max distance between indices of entries above tolerance; infinity if a
// nonzero entry joins distinct L-classes.
inline ExtNat propagation(const BandOperator& t, const MetricTable& d) {
  ExtNat prop(0);
  for (int i = 0; i < t.n(); ++i)
    for (int j = 0; j < t.n(); ++j) {
      if (std::abs(t.at(i, j)) <= t.tolerance) continue;
      ExtNat dist = d.distance(t.indices[(std::size_t)j], t.indices[(std::size_t)i]);
      if (dist > prop) prop = dist;
    }
  return prop;
}

struct DecompositionResult {
  struct Term {
    Element s;
    std::vector<std::complex<double>> f;  // diagonal of the multiplication operator
  };
  std::vector<Term> terms;
  std::vector<Element> witness;  // F for r = prop(T)
  double residual_operator_norm = 0.0;
  double residual_frobenius = 0.0;
};

struct decomposition_unavailable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline BandOperator reassemble(const FiniteSemigroup& s, const DecompositionResult& dec,
                               const std::vector<Element>& indices, double tol) {
  BandOperator out = BandOperator::zero(indices, tol);
  const SemigroupOracle& oracle = *s.oracle;
  std::map<Key, int, KeyLess> pos;
  for (int i = 0; i < out.n(); ++i) pos[out.indices[(std::size_t)i].key] = i;
  for (auto& term : dec.terms) {
    Element ss = oracle.multiply(oracle.invert(term.s), term.s);
    for (int j = 0; j < out.n(); ++j) {
      if (term.f[(std::size_t)j] == std::complex<double>{}) continue;
      const Element& x = out.indices[(std::size_t)j];
      if (oracle.multiply(ss, x) != x) continue;
      Element sx = oracle.multiply(term.s, x);
      auto it = pos.find(sx.key);
      if (it == pos.end()) continue;
      out.at(it->second, j) += term.f[(std::size_t)j];
    }
  }
  return out;
}

}  // namespace detail

// Band decomposition T = Σ_{s∈F} v_s diag(f_s): for each entry
// T_{y,x} above tolerance, the carrier t_{x,y} is the canonically least
// member of the properness witness F (for r = prop(T)) with t x = y, and
// f_s(x) = T_{sx,x} exactly when s = t_{x,sx}.
inline DecompositionResult decompose_band(const BandOperator& t, const FiniteSemigroup& s,
                                          const MetricTable& d) {
  const SemigroupOracle& oracle = *s.oracle;
  ExtNat prop = propagation(t, d);
  if (!prop.is_finite())
    throw decomposition_unavailable_error("decompose_band: infinite propagation");
  PropernessWitness w = properness_witness(d, prop.value());
  if (w.status != WitnessStatus::Found)
    throw decomposition_unavailable_error("decompose_band: no properness witness at r = " +
                                          std::to_string(prop.value()));

  // idempotents x x* carry the diagonal; make sure they are available even
  // when the greedy witness skipped singleton pairs
  std::vector<Element> f = w.witness;
  for (const Element& x : t.indices) {
    Element xx = oracle.multiply(x, oracle.invert(x));
    f.push_back(xx);
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());

  DecompositionResult dec;
  dec.witness = f;
  std::map<Key, std::size_t, KeyLess> term_of;
  for (int j = 0; j < t.n(); ++j) {
    const Element& x = t.indices[(std::size_t)j];
    for (int i = 0; i < t.n(); ++i) {
      if (std::abs(t.at(i, j)) <= t.tolerance) continue;
      const Element& y = t.indices[(std::size_t)i];
      std::optional<Element> carrier;
      for (const Element& c : f)
        if (oracle.multiply(c, x) == y) {
          carrier = c;  // f is canonically sorted, first hit is least
          break;
        }
      if (!carrier)
        throw decomposition_unavailable_error("decompose_band: witness misses a pair");
      auto it = term_of.find(carrier->key);
      if (it == term_of.end()) {
        it = term_of.insert({carrier->key, dec.terms.size()}).first;
        dec.terms.push_back({*carrier, std::vector<std::complex<double>>((std::size_t)t.n())});
      }
      dec.terms[it->second].f[(std::size_t)j] = t.at(i, j);
    }
  }
  std::sort(dec.terms.begin(), dec.terms.end(),
            [](const auto& a, const auto& b) { return a.s < b.s; });

  BandOperator rebuilt = detail::reassemble(s, dec, t.indices, t.tolerance);
  BandOperator residual = t - rebuilt;
  dec.residual_operator_norm = operator_norm(residual);
  dec.residual_frobenius = frobenius_norm(residual);
  return dec;
}

// ---------------------------------------------------------------------------
// Proper-isometry probes
// ---------------------------------------------------------------------------
struct PathShiftResult {
  BandOperator v;
  std::vector<Element> vstarv_defect;  // indices where (v*v) differs from 1
  std::vector<Element> vvstar_defect;
};

// Shift along a path inside one L-class: δ_{x_i} ↦ δ_{x_{i+1}}, the last
// point maps to 0, identity off the path. This is the finite truncation of
// the proper-isometry witness; its defects are exactly {last} and {first}.
inline PathShiftResult path_shift(const std::vector<Element>& path,
                                  const std::vector<Element>& scope, const MetricTable& d,
                                  std::uint64_t r) {
  if (path.empty()) throw validation_error("path_shift: empty path");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    ExtNat step = d.distance(path[i], path[i + 1]);
    if (!step.is_finite() || step.value() > r || step.value() == 0)
      throw validation_error("path_shift: consecutive entries not within distance r");
  }
  PathShiftResult res;
  res.v = BandOperator::identity(scope);
  std::map<Key, int, KeyLess> pos;
  for (int i = 0; i < res.v.n(); ++i) pos[res.v.indices[(std::size_t)i].key] = i;
  for (const Element& p : path) {
    auto it = pos.find(p.key);
    if (it == pos.end()) throw alignment_error("path_shift: path point outside scope");
    res.v.at(it->second, it->second) = 0.0;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    res.v.at(pos[path[i + 1].key], pos[path[i].key]) = 1.0;

  BandOperator vv = res.v.adjoint() * res.v;
  BandOperator ww = res.v * res.v.adjoint();
  for (int i = 0; i < res.v.n(); ++i) {
    if (std::abs(vv.at(i, i) - 1.0) > res.v.tolerance)
      res.vstarv_defect.push_back(res.v.indices[(std::size_t)i]);
    if (std::abs(ww.at(i, i) - 1.0) > res.v.tolerance)
      res.vvstar_defect.push_back(res.v.indices[(std::size_t)i]);
  }
  return res;
}

struct ProperIsometryReport {
  bool verdict = false;  // always false in finite dimensions
  bool is_isometry = false;
  std::vector<Element> vstarv_defect;
  std::vector<Element> vvstar_defect;
  std::string reason;
};

// v*v = 1 and vv* < 1 cannot coexist on a finite matrix: v*v = 1 forces v
// invertible by the rank argument, so vv* = 1 too. The probe certifies the
// negative verdict and reports both defect sets for truncation diagnostics.
inline ProperIsometryReport is_proper_isometry(const BandOperator& v) {
  ProperIsometryReport rep;
  BandOperator vv = v.adjoint() * v;
  BandOperator ww = v * v.adjoint();
  bool vstarv_is_one = true;
  for (int i = 0; i < v.n(); ++i)
    for (int j = 0; j < v.n(); ++j) {
      double target_vv = std::abs(vv.at(i, j) - (i == j ? 1.0 : 0.0));
      double target_ww = std::abs(ww.at(i, j) - (i == j ? 1.0 : 0.0));
      if (target_vv > v.tolerance) {
        vstarv_is_one = false;
        if (i == j) rep.vstarv_defect.push_back(v.indices[(std::size_t)i]);
      }
      if (target_ww > v.tolerance && i == j)
        rep.vvstar_defect.push_back(v.indices[(std::size_t)i]);
    }
  rep.is_isometry = vstarv_is_one;
  if (!vstarv_is_one) {
    rep.reason = "v*v != 1";
  } else if (rep.vvstar_defect.empty()) {
    rep.reason = "v is unitary, vv* = 1 is not a proper projection";
  } else {
    // unreachable on square finite matrices; kept for honest reporting
    rep.reason = "v*v = 1 with vv* defect";
  }
  rep.verdict = false;
  return rep;
}

}  // namespace invgeo
