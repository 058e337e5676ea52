#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "invgeo/element.hpp"

namespace invgeo {

// Exact arithmetic for one inverse semigroup, keyed by canonical element keys.
// All maps are left maps and products apply the right factor first, so in a
// symmetric inverse monoid (fg)(x) = f(g(x)).
class SemigroupOracle {
 public:
  virtual ~SemigroupOracle() = default;

  virtual std::string signature() const = 0;

  Element multiply(const Element& a, const Element& b) const {
    check_origin(a);
    check_origin(b);
    return make(mul_key(a.key, b.key));
  }

  Element invert(const Element& a) const {
    check_origin(a);
    return make(inv_key(a.key));
  }

  bool is_idempotent(const Element& a) const { return mul_key(a.key, a.key) == a.key; }

  // s <= t iff s s* t = s.
  bool natural_leq(const Element& a, const Element& b) const {
    check_origin(a);
    check_origin(b);
    Key ssi = mul_key(a.key, inv_key(a.key));
    return mul_key(ssi, b.key) == a.key;
  }

  Element make(Key k) const { return Element{this, std::move(k)}; }

  // True if the whole semigroup is finite (not just a truncation of it).
  virtual bool is_globally_finite() const { return false; }

  // Canonical truncation of the element set. Families with a natural graded
  // structure enumerate every element of grade <= depth; finite families
  // return everything. Throws scope_required_error when no truncation exists.
  virtual std::vector<Element> scope_elements(std::uint64_t depth) const {
    (void)depth;
    throw scope_required_error("oracle " + signature() + " has no canonical truncation");
  }

  // Smallest depth whose truncation contains the element; 0 for finite families.
  virtual std::uint64_t scope_level(const Element& a) const {
    (void)a;
    return 0;
  }

 protected:
  virtual Key mul_key(const Key& a, const Key& b) const = 0;
  virtual Key inv_key(const Key& a) const = 0;

  void check_origin(const Element& a) const {
    if (a.origin == nullptr || a.origin->signature() != signature())
      throw domain_mismatch_error("element from oracle '" +
                                  (a.origin ? a.origin->signature() : std::string("<none>")) +
                                  "' used with oracle '" + signature() + "'");
  }
};

// ---------------------------------------------------------------------------
// Symmetric inverse monoid I_n: all partial bijections of {1..n}.
// Key: flat list of (source, target) pairs sorted by source.
// ---------------------------------------------------------------------------
class SymmetricInverseMonoid : public SemigroupOracle {
 public:
  explicit SymmetricInverseMonoid(int n) : n_(n) {
    if (n < 1) throw validation_error("symmetric_inverse_monoid: n must be >= 1");
  }

  int ground_size() const { return n_; }

  std::string signature() const override { return "I" + std::to_string(n_); }
  bool is_globally_finite() const override { return true; }

  // Element from explicit pairs; validates injectivity and range.
  Element from_pairs(std::vector<std::pair<int, int>> pairs) const {
    std::sort(pairs.begin(), pairs.end());
    Key k;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [s, t] = pairs[i];
      if (s < 1 || s > n_ || t < 1 || t > n_)
        throw validation_error("partial bijection: point outside 1.." + std::to_string(n_));
      if (i > 0 && pairs[i - 1].first == s)
        throw validation_error("partial bijection: duplicate source " + std::to_string(s));
      k.push_back(s);
      k.push_back(t);
    }
    std::vector<int> targets;
    for (auto& [s, t] : pairs) targets.push_back(t);
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
      throw validation_error("partial bijection: duplicate target");
    return make(std::move(k));
  }

  Element identity() const {
    std::vector<std::pair<int, int>> p;
    for (int i = 1; i <= n_; ++i) p.push_back({i, i});
    return from_pairs(p);
  }

  Element zero() const { return make(Key{}); }

  // Identity map on a subset of {1..n}.
  Element partial_identity(const std::vector<int>& dom) const {
    std::vector<std::pair<int, int>> p;
    for (int i : dom) p.push_back({i, i});
    return from_pairs(p);
  }

  // Rank-1 map x -> y.
  Element gamma(int y, int x) const { return from_pairs({{x, y}}); }

  std::vector<Element> scope_elements(std::uint64_t) const override { return all_elements(); }

  // Every partial bijection of {1..n}, by choosing domain, image and bijection.
  std::vector<Element> all_elements() const {
    std::vector<Element> out;
    for (int dom_mask = 0; dom_mask < (1 << n_); ++dom_mask) {
      std::vector<int> dom;
      for (int i = 0; i < n_; ++i)
        if (dom_mask & (1 << i)) dom.push_back(i + 1);
      for (int im_mask = 0; im_mask < (1 << n_); ++im_mask) {
        std::vector<int> im;
        for (int i = 0; i < n_; ++i)
          if (im_mask & (1 << i)) im.push_back(i + 1);
        if (im.size() != dom.size()) continue;
        std::sort(im.begin(), im.end());
        do {
          std::vector<std::pair<int, int>> pairs;
          for (std::size_t i = 0; i < dom.size(); ++i) pairs.push_back({dom[i], im[i]});
          out.push_back(from_pairs(pairs));
        } while (std::next_permutation(im.begin(), im.end()));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 protected:
  Key mul_key(const Key& a, const Key& b) const override {
    // (ab)(x) = a(b(x)) on the largest possible domain.
    std::map<int, int> amap;
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) amap[(int)a[i]] = (int)a[i + 1];
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < b.size(); i += 2) {
      auto it = amap.find((int)b[i + 1]);
      if (it != amap.end()) pairs.push_back({(int)b[i], it->second});
    }
    std::sort(pairs.begin(), pairs.end());
    Key k;
    for (auto& [s, t] : pairs) {
      k.push_back(s);
      k.push_back(t);
    }
    return k;
  }

  Key inv_key(const Key& a) const override {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) pairs.push_back({(int)a[i + 1], (int)a[i]});
    std::sort(pairs.begin(), pairs.end());
    Key k;
    for (auto& [s, t] : pairs) {
      k.push_back(s);
      k.push_back(t);
    }
    return k;
  }

 private:
  int n_;
};

// ---------------------------------------------------------------------------
// Bicyclic monoid <p, q | pq = 1>, normal forms q^a p^b. Key: [a, b].
// ---------------------------------------------------------------------------
class BicyclicMonoid : public SemigroupOracle {
 public:
  std::string signature() const override { return "bicyclic"; }

  Element p() const { return make(Key{0, 1}); }
  Element q() const { return make(Key{1, 0}); }
  Element identity() const { return make(Key{0, 0}); }

  std::vector<Element> scope_elements(std::uint64_t depth) const override {
    std::vector<Element> out;
    for (std::int64_t a = 0; a <= (std::int64_t)depth; ++a)
      for (std::int64_t b = 0; a + b <= (std::int64_t)depth; ++b) out.push_back(make(Key{a, b}));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t scope_level(const Element& a) const override {
    return (std::uint64_t)(a.key[0] + a.key[1]);
  }

 protected:
  Key mul_key(const Key& x, const Key& y) const override {
    // q^a p^b q^c p^d: cancel min(b, c) inner pq pairs.
    std::int64_t a = x[0], b = x[1], c = y[0], d = y[1];
    if (b >= c) return Key{a, b - c + d};
    return Key{a + c - b, d};
  }

  Key inv_key(const Key& x) const override { return Key{x[1], x[0]}; }
};

// ---------------------------------------------------------------------------
// Free inverse monoid on one generator, as Munn intervals. Key: [a, g, b]
// with a <= min(0, g) and b >= max(0, g).
// ---------------------------------------------------------------------------
class FreeInverseMonoid1 : public SemigroupOracle {
 public:
  std::string signature() const override { return "fim1"; }

  Element identity() const { return make(Key{0, 0, 0}); }
  Element x() const { return make(Key{0, 1, 1}); }

  Element triple(std::int64_t a, std::int64_t g, std::int64_t b) const {
    if (a > std::min<std::int64_t>(0, g) || b < std::max<std::int64_t>(0, g))
      throw validation_error("fim1: triple violates a <= min(0,g) <= max(0,g) <= b");
    return make(Key{a, g, b});
  }

  // Every triple with interval length b - a <= depth; truncations contain
  // whole L-classes, so word-metric distances inside them are exact.
  std::vector<Element> scope_elements(std::uint64_t depth) const override {
    std::vector<Element> out;
    std::int64_t d = (std::int64_t)depth;
    for (std::int64_t a = -d; a <= 0; ++a)
      for (std::int64_t b = 0; b - a <= d; ++b)
        for (std::int64_t g = a; g <= b; ++g) {
          if (a > std::min<std::int64_t>(0, g) || b < std::max<std::int64_t>(0, g)) continue;
          out.push_back(make(Key{a, g, b}));
        }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t scope_level(const Element& a) const override {
    return (std::uint64_t)(a.key[2] - a.key[0]);
  }

 protected:
  Key mul_key(const Key& x, const Key& y) const override {
    std::int64_t a = x[0], g = x[1], b = x[2];
    std::int64_t c = y[0], h = y[1], d = y[2];
    return Key{std::min(a, g + c), g + h, std::max(b, g + d)};
  }

  Key inv_key(const Key& x) const override { return Key{x[0] - x[1], -x[1], x[2] - x[1]}; }
};

// ---------------------------------------------------------------------------
// Concrete finite inverse semigroup given by full product and inverse tables.
// Key: [index].
// ---------------------------------------------------------------------------
class ConcreteSemigroup : public SemigroupOracle {
 public:
  ConcreteSemigroup(std::string name, std::vector<std::vector<int>> product,
                    std::vector<int> inverse)
      : name_(std::move(name)), product_(std::move(product)), inverse_(std::move(inverse)) {
    int n = (int)product_.size();
    if (n == 0) throw validation_error("concrete: empty product table");
    for (auto& row : product_) {
      if ((int)row.size() != n) throw validation_error("concrete: product table is not square");
      for (int v : row)
        if (v < 0 || v >= n) throw validation_error("concrete: product entry out of range");
    }
    if ((int)inverse_.size() != n)
      throw validation_error("concrete: inverse table size mismatch");
    for (int v : inverse_)
      if (v < 0 || v >= n) throw validation_error("concrete: inverse entry out of range");
    for (int i = 0; i < n; ++i) {
      int s = i, si = inverse_[i];
      if (product_[product_[s][si]][s] != s || product_[product_[si][s]][si] != si)
        throw validation_error("concrete: inverse table violates s s* s = s at index " +
                               std::to_string(i));
    }
  }

  std::string signature() const override { return "concrete:" + name_; }
  bool is_globally_finite() const override { return true; }

  int size() const { return (int)product_.size(); }
  Element at(int i) const { return make(Key{i}); }

  std::vector<Element> scope_elements(std::uint64_t) const override {
    std::vector<Element> out;
    for (int i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
  }

  // Cyclic group Z_n as a concrete table.
  static std::shared_ptr<ConcreteSemigroup> cyclic_group(int n) {
    std::vector<std::vector<int>> prod(n, std::vector<int>(n));
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) {
      inv[i] = (n - i) % n;
      for (int j = 0; j < n; ++j) prod[i][j] = (i + j) % n;
    }
    return std::make_shared<ConcreteSemigroup>("Z" + std::to_string(n), prod, inv);
  }

 protected:
  Key mul_key(const Key& a, const Key& b) const override {
    return Key{product_[(std::size_t)a[0]][(std::size_t)b[0]]};
  }
  Key inv_key(const Key& a) const override { return Key{inverse_[(std::size_t)a[0]]}; }

 private:
  std::string name_;
  std::vector<std::vector<int>> product_;
  std::vector<int> inverse_;
};

// ---------------------------------------------------------------------------
// Direct product of a finite group (concrete table) and a chain semilattice,
// either {0, 1, ..., len-1} or all of N, with min as the meet.
// Key: [chain value, group index]; the chain value leads so that canonical
// order agrees with the truncation grading.
// ---------------------------------------------------------------------------
class GroupChainProduct : public SemigroupOracle {
 public:
  GroupChainProduct(std::shared_ptr<ConcreteSemigroup> group, std::int64_t chain_len /* -1 = N */)
      : group_(std::move(group)), chain_len_(chain_len) {
    if (chain_len_ == 0 || chain_len_ < -1)
      throw validation_error("product: chain length must be positive or the chain must be N");
    int n = group_->size();
    identity_ = -1;
    for (int e = 0; e < n; ++e) {
      bool id = true;
      for (int g = 0; g < n && id; ++g) {
        Element ge = group_->multiply(group_->at(g), group_->at(e));
        Element eg = group_->multiply(group_->at(e), group_->at(g));
        if (ge.key[0] != g || eg.key[0] != g) id = false;
      }
      if (id) {
        identity_ = e;
        break;
      }
    }
    if (identity_ < 0) throw validation_error("product: group table has no identity");
    // exactly one idempotent means the table is a group
    for (int g = 0; g < n; ++g)
      if (group_is_idempotent(g) && g != identity_)
        throw validation_error("product: group table has more than one idempotent");
  }

  std::string signature() const override {
    return "product(" + group_->signature() + "," +
           (chain_len_ < 0 ? std::string("chainN") : "chain" + std::to_string(chain_len_)) + ")";
  }

  bool is_globally_finite() const override { return chain_len_ >= 0; }

  const ConcreteSemigroup& group() const { return *group_; }
  int group_identity() const { return identity_; }

  Element pair(int g, std::int64_t level) const {
    if (g < 0 || g >= group_->size()) throw validation_error("product: group index out of range");
    if (level < 0 || (chain_len_ >= 0 && level >= chain_len_))
      throw validation_error("product: chain value out of range");
    return make(Key{level, g});
  }

  std::vector<Element> scope_elements(std::uint64_t depth) const override {
    std::int64_t top = chain_len_ >= 0 ? std::min<std::int64_t>(chain_len_ - 1, (std::int64_t)depth)
                                       : (std::int64_t)depth;
    std::vector<Element> out;
    for (std::int64_t n = 0; n <= top; ++n)
      for (int g = 0; g < group_->size(); ++g) out.push_back(make(Key{n, g}));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t scope_level(const Element& a) const override { return (std::uint64_t)a.key[0]; }

 protected:
  Key mul_key(const Key& a, const Key& b) const override {
    Element gh = group_->multiply(group_->at((int)a[1]), group_->at((int)b[1]));
    return Key{std::min(a[0], b[0]), gh.key[0]};
  }

  Key inv_key(const Key& a) const override {
    return Key{a[0], group_->invert(group_->at((int)a[1])).key[0]};
  }

 private:
  bool group_is_idempotent(int g) const {
    return group_->multiply(group_->at(g), group_->at(g)).key[0] == g;
  }

  std::shared_ptr<ConcreteSemigroup> group_;
  std::int64_t chain_len_;
  int identity_;
};

// ---------------------------------------------------------------------------
// Chain semilattice ({0..len-1} or N, min) on its own. Key: [value].
// ---------------------------------------------------------------------------
class ChainSemilattice : public SemigroupOracle {
 public:
  explicit ChainSemilattice(std::int64_t len /* -1 = N */) : len_(len) {
    if (len_ == 0 || len_ < -1) throw validation_error("chain: length must be positive or N");
  }

  std::string signature() const override {
    return len_ < 0 ? "chainN" : "chain" + std::to_string(len_);
  }

  bool is_globally_finite() const override { return len_ >= 0; }

  Element at(std::int64_t v) const {
    if (v < 0 || (len_ >= 0 && v >= len_)) throw validation_error("chain: value out of range");
    return make(Key{v});
  }

  std::vector<Element> scope_elements(std::uint64_t depth) const override {
    std::int64_t top =
        len_ >= 0 ? std::min<std::int64_t>(len_ - 1, (std::int64_t)depth) : (std::int64_t)depth;
    std::vector<Element> out;
    for (std::int64_t v = 0; v <= top; ++v) out.push_back(make(Key{v}));
    return out;
  }

  std::uint64_t scope_level(const Element& a) const override { return (std::uint64_t)a.key[0]; }

 protected:
  Key mul_key(const Key& a, const Key& b) const override { return Key{std::min(a[0], b[0])}; }
  Key inv_key(const Key& a) const override { return a; }

 private:
  std::int64_t len_;
};

}  // namespace invgeo
