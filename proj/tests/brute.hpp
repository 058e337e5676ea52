#pragma once

// Independent reference computations used to cross-check the oracle
// arithmetic: direct enumeration of partial bijections, shift representations
// of the bicyclic monoid, and walk evaluation of one-generator inverse words.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "invgeo/oracle.hpp"

namespace brute {

// Every partial bijection on {1..n} as a sorted key, enumerated from scratch
// by domain mask, image mask and permutation.
inline std::set<invgeo::Key, invgeo::KeyLess> all_partial_bijections(int n) {
  std::set<invgeo::Key, invgeo::KeyLess> out;
  for (int dom = 0; dom < (1 << n); ++dom) {
    std::vector<int> sources;
    for (int i = 0; i < n; ++i)
      if (dom & (1 << i)) sources.push_back(i + 1);
    for (int img = 0; img < (1 << n); ++img) {
      std::vector<int> targets;
      for (int i = 0; i < n; ++i)
        if (img & (1 << i)) targets.push_back(i + 1);
      if (targets.size() != sources.size()) continue;
      std::sort(targets.begin(), targets.end());
      do {
        invgeo::Key k;
        for (std::size_t i = 0; i < sources.size(); ++i) {
          k.push_back(sources[i]);
          k.push_back(targets[i]);
        }
        out.insert(k);
      } while (std::next_permutation(targets.begin(), targets.end()));
    }
  }
  return out;
}

// Bicyclic generators as truncated shifts on {0..N}, composed as partial
// maps. Word letters: 0 = p (x -> x-1), 1 = q (x -> x+1).
struct ShiftMap {
  int n;
  std::vector<int> image;  // image[x] in [0..n], -1 outside the domain

  static ShiftMap identity(int n) {
    ShiftMap m{n, {}};
    m.image.resize((std::size_t)n + 1);
    for (int x = 0; x <= n; ++x) m.image[(std::size_t)x] = x;
    return m;
  }
  static ShiftMap p(int n) {
    ShiftMap m{n, std::vector<int>((std::size_t)n + 1, -1)};
    for (int x = 1; x <= n; ++x) m.image[(std::size_t)x] = x - 1;
    return m;
  }
  static ShiftMap q(int n) {
    ShiftMap m{n, std::vector<int>((std::size_t)n + 1, -1)};
    for (int x = 0; x < n; ++x) m.image[(std::size_t)x] = x + 1;
    return m;
  }
  // this ∘ other
  ShiftMap after(const ShiftMap& other) const {
    ShiftMap m{n, std::vector<int>((std::size_t)n + 1, -1)};
    for (int x = 0; x <= n; ++x) {
      int y = other.image[(std::size_t)x];
      if (y >= 0) m.image[(std::size_t)x] = image[(std::size_t)y];
    }
    return m;
  }
};

inline ShiftMap eval_bicyclic_word(const std::vector<int>& word, int n) {
  ShiftMap acc = ShiftMap::identity(n);
  // the product letter_1 ... letter_k acts as letter_1 after ... after letter_k
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    acc = (*it == 0 ? ShiftMap::p(n) : ShiftMap::q(n)).after(acc);
  return acc;
}

// Walk evaluation of a word over {x, x*} (letters +1 / -1): final position
// and the extremes visited.
struct Walk {
  std::int64_t min = 0, end = 0, max = 0;
};

inline Walk eval_fim1_word(const std::vector<int>& word) {
  Walk w;
  std::int64_t pos = 0;
  for (int step : word) {
    pos += step;
    w.min = std::min(w.min, pos);
    w.max = std::max(w.max, pos);
  }
  w.end = pos;
  return w;
}

inline std::vector<std::vector<int>> all_words(const std::vector<int>& alphabet, int max_len) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> frontier{{}};
  for (int l = 0; l < max_len; ++l) {
    std::vector<std::vector<int>> next;
    for (auto& w : frontier)
      for (int a : alphabet) {
        auto w2 = w;
        w2.push_back(a);
        out.push_back(w2);
        next.push_back(std::move(w2));
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace brute
