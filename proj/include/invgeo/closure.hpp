#pragma once

#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "invgeo/oracle.hpp"

namespace invgeo {

enum class GenerationStatus { Complete, Truncated };

// A finite (or truncated) chunk of an inverse semigroup, with its product and
// inverse tables. Element order is breadth-first by word length, ties broken
// by canonical key, so numbering is reproducible across runs.
struct FiniteSemigroup {
  const SemigroupOracle* oracle = nullptr;
  std::vector<Element> elements;
  std::map<Key, int, KeyLess> index;
  // product[i][j] = index of elements[i]*elements[j], or -1 if the product
  // fell outside a truncated element set.
  std::vector<std::vector<int>> product;
  std::vector<int> inverse;  // always closed: closure steps add inverses first
  std::vector<bool> idempotent;
  GenerationStatus status = GenerationStatus::Complete;
  std::uint64_t cap = 0;
  // word_length[i] = BFS level at which element i appeared (generators = 1).
  std::vector<std::uint64_t> word_length;

  int size() const { return (int)elements.size(); }
  bool complete() const { return status == GenerationStatus::Complete; }

  std::optional<int> find(const Element& e) const {
    auto it = index.find(e.key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  int mul(int i, int j) const { return product[(std::size_t)i][(std::size_t)j]; }
  int inv(int i) const { return inverse[(std::size_t)i]; }
};

namespace detail {

inline void fill_tables(FiniteSemigroup& fs) {
  int n = fs.size();
  fs.product.assign((std::size_t)n, std::vector<int>((std::size_t)n, -1));
  fs.inverse.assign((std::size_t)n, -1);
  fs.idempotent.assign((std::size_t)n, false);
  for (int i = 0; i < n; ++i) {
    Element vi = fs.oracle->invert(fs.elements[(std::size_t)i]);
    auto it = fs.index.find(vi.key);
    fs.inverse[(std::size_t)i] = it == fs.index.end() ? -1 : it->second;
    for (int j = 0; j < n; ++j) {
      Element pr = fs.oracle->multiply(fs.elements[(std::size_t)i], fs.elements[(std::size_t)j]);
      auto pt = fs.index.find(pr.key);
      fs.product[(std::size_t)i][(std::size_t)j] = pt == fs.index.end() ? -1 : pt->second;
    }
    fs.idempotent[(std::size_t)i] = fs.oracle->is_idempotent(fs.elements[(std::size_t)i]);
  }
}

}  // namespace detail

// Breadth-first closure of the generators under multiply and invert. Words of
// length n are all products of n generators-or-inverses; each BFS level is
// sorted by canonical key before numbering. Exceeding the cap is a status,
// not an error.
inline FiniteSemigroup generate_closure(const SemigroupOracle& oracle,
                                        const std::vector<Element>& generators,
                                        std::uint64_t cap) {
  if (cap < 1) throw validation_error("generate_closure: cap must be >= 1");
  FiniteSemigroup fs;
  fs.oracle = &oracle;
  fs.cap = cap;

  // level 1 = generators and their inverses; level n+1 = one-generator
  // products with level-n words on either side. The generator set is
  // symmetric, so closure under inversion comes for free.
  std::set<Key, KeyLess> seen;
  std::vector<Element> gens1;
  {
    std::set<Key, KeyLess> g1;
    for (const Element& g : generators) {
      g1.insert(g.key);
      g1.insert(oracle.invert(g).key);
    }
    for (const Key& k : g1) gens1.push_back(oracle.make(k));
  }
  std::vector<Element> frontier;
  std::set<Key, KeyLess> level_set;
  for (const Element& g : gens1) level_set.insert(g.key);
  std::uint64_t level = 1;
  bool truncated = false;
  while (!level_set.empty()) {
    frontier.clear();
    for (const Key& k : level_set) {
      if (seen.count(k)) continue;
      if ((std::uint64_t)fs.elements.size() >= cap) {
        truncated = true;
        break;
      }
      seen.insert(k);
      fs.index[k] = (int)fs.elements.size();
      fs.elements.push_back(oracle.make(k));
      fs.word_length.push_back(level);
      frontier.push_back(fs.elements.back());
    }
    if (truncated) break;
    level_set.clear();
    for (const Element& f : frontier) {
      for (const Element& g : gens1) {
        Key gf = oracle.multiply(g, f).key;
        Key fg = oracle.multiply(f, g).key;
        if (!seen.count(gf)) level_set.insert(gf);
        if (!seen.count(fg)) level_set.insert(fg);
      }
    }
    ++level;
  }
  fs.status = truncated ? GenerationStatus::Truncated : GenerationStatus::Complete;
  detail::fill_tables(fs);
  return fs;
}

// A FiniteSemigroup over a fixed element list (no generation). Used for
// truncation scopes and for whole finite families.
inline FiniteSemigroup semigroup_from_elements(const SemigroupOracle& oracle,
                                               std::vector<Element> elements, bool complete) {
  FiniteSemigroup fs;
  fs.oracle = &oracle;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  fs.elements = std::move(elements);
  for (int i = 0; i < fs.size(); ++i) fs.index[fs.elements[(std::size_t)i].key] = i;
  fs.word_length.assign((std::size_t)fs.size(), 0);
  fs.status = complete ? GenerationStatus::Complete : GenerationStatus::Truncated;
  fs.cap = (std::uint64_t)fs.size();
  detail::fill_tables(fs);
  return fs;
}

// S^1 = S ⊔ {1} as a concrete table; 1 multiplies as an identity and forms
// its own L-, R- and D-class. Index n is the new identity.
inline std::shared_ptr<ConcreteSemigroup> adjoin_identity(const FiniteSemigroup& s) {
  if (!s.complete()) throw validation_error("adjoin_identity: requires a Complete semigroup");
  int n = s.size();
  std::vector<std::vector<int>> prod((std::size_t)n + 1, std::vector<int>((std::size_t)n + 1));
  std::vector<int> inv((std::size_t)n + 1);
  for (int i = 0; i < n; ++i) {
    inv[(std::size_t)i] = s.inv(i);
    for (int j = 0; j < n; ++j) prod[(std::size_t)i][(std::size_t)j] = s.mul(i, j);
    prod[(std::size_t)i][(std::size_t)n] = i;
    prod[(std::size_t)n][(std::size_t)i] = i;
  }
  prod[(std::size_t)n][(std::size_t)n] = n;
  inv[(std::size_t)n] = n;
  return std::make_shared<ConcreteSemigroup>(s.oracle->signature() + "^1", prod, inv);
}

enum class SemigroupClass { Group, Semilattice, General };

struct Classification {
  SemigroupClass kind;
  std::vector<Element> idempotents;  // evidence
  bool at_scale_warning = false;     // input was truncated
};

// Group iff exactly one idempotent; semilattice iff everything idempotent.
inline Classification classify(const FiniteSemigroup& s) {
  Classification c;
  c.at_scale_warning = !s.complete();
  bool all = true;
  for (int i = 0; i < s.size(); ++i) {
    if (s.idempotent[(std::size_t)i])
      c.idempotents.push_back(s.elements[(std::size_t)i]);
    else
      all = false;
  }
  if (c.idempotents.size() == 1)
    c.kind = SemigroupClass::Group;
  else if (all)
    c.kind = SemigroupClass::Semilattice;
  else
    c.kind = SemigroupClass::General;
  return c;
}

// ---------------------------------------------------------------------------
// Green's relations on a finite chunk.
// ---------------------------------------------------------------------------
struct GreenTable {
  std::vector<int> l_class;  // per element
  std::vector<int> r_class;
  std::vector<int> d_class;
  std::vector<std::vector<int>> l_members;
  std::vector<std::vector<int>> r_members;
  std::vector<std::vector<int>> d_members;
};

// L via s*s, R via ss*, D as the join of L and R (union-find). Class ids are
// numbered by the least member index.
inline GreenTable green_table(const FiniteSemigroup& s) {
  int n = s.size();
  GreenTable g;
  g.l_class.assign((std::size_t)n, -1);
  g.r_class.assign((std::size_t)n, -1);

  std::map<Key, std::vector<int>, KeyLess> by_ll, by_rr;
  for (int i = 0; i < n; ++i) {
    Element e = s.elements[(std::size_t)i];
    by_ll[s.oracle->multiply(s.oracle->invert(e), e).key].push_back(i);
    by_rr[s.oracle->multiply(e, s.oracle->invert(e)).key].push_back(i);
  }
  for (auto& [k, members] : by_ll) {
    int id = (int)g.l_members.size();
    for (int i : members) g.l_class[(std::size_t)i] = id;
    g.l_members.push_back(members);
  }
  for (auto& [k, members] : by_rr) {
    int id = (int)g.r_members.size();
    for (int i : members) g.r_class[(std::size_t)i] = id;
    g.r_members.push_back(members);
  }

  // D = smallest equivalence containing L and R
  std::vector<int> parent((std::size_t)n);
  for (int i = 0; i < n; ++i) parent[(std::size_t)i] = i;
  auto find = [&](int x) {
    while (parent[(std::size_t)x] != x) {
      parent[(std::size_t)x] = parent[(std::size_t)parent[(std::size_t)x]];
      x = parent[(std::size_t)x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[(std::size_t)std::max(a, b)] = std::min(a, b);
  };
  for (auto& members : g.l_members)
    for (std::size_t i = 1; i < members.size(); ++i) unite(members[0], members[i]);
  for (auto& members : g.r_members)
    for (std::size_t i = 1; i < members.size(); ++i) unite(members[0], members[i]);

  g.d_class.assign((std::size_t)n, -1);
  std::map<int, int> root_to_id;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    auto it = root_to_id.find(r);
    if (it == root_to_id.end()) {
      it = root_to_id.insert({r, (int)g.d_members.size()}).first;
      g.d_members.push_back({});
    }
    g.d_class[(std::size_t)i] = it->second;
    g.d_members[(std::size_t)it->second].push_back(i);
  }
  return g;
}

enum class GreenRelation { L, R, D };

// L via s*s = t*t; R via ss* = tt*; D needs a search scope on infinite
// oracles, supplied as a FiniteSemigroup chunk containing both elements.
inline bool green_related(const SemigroupOracle& oracle, const Element& a, const Element& b,
                          GreenRelation rel, const FiniteSemigroup* scope = nullptr) {
  if (rel == GreenRelation::L)
    return oracle.multiply(oracle.invert(a), a) == oracle.multiply(oracle.invert(b), b);
  if (rel == GreenRelation::R)
    return oracle.multiply(a, oracle.invert(a)) == oracle.multiply(b, oracle.invert(b));
  // D: exists u with a L u R b
  if (scope == nullptr) {
    if (!oracle.is_globally_finite())
      throw scope_required_error("green_related: D-query on an infinite oracle needs a scope");
    auto all = oracle.scope_elements(0);
    Key lla = oracle.multiply(oracle.invert(a), a).key;
    Key rrb = oracle.multiply(b, oracle.invert(b)).key;
    for (const Element& u : all)
      if (oracle.multiply(oracle.invert(u), u).key == lla &&
          oracle.multiply(u, oracle.invert(u)).key == rrb)
        return true;
    return false;
  }
  Key lla = oracle.multiply(oracle.invert(a), a).key;
  Key rrb = oracle.multiply(b, oracle.invert(b)).key;
  for (const Element& u : scope->elements)
    if (oracle.multiply(oracle.invert(u), u).key == lla &&
        oracle.multiply(u, oracle.invert(u)).key == rrb)
      return true;
  return false;
}

}  // namespace invgeo
