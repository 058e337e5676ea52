#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace invgeo {

// Canonical key of a semigroup element. Comparison is (length, lexicographic),
// which gives a total order with the empty key least.
using Key = std::vector<std::int64_t>;

inline int compare_keys(const Key& a, const Key& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const { return compare_keys(a, b) < 0; }
};

inline std::string key_to_string(const Key& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(k[i]);
  }
  s += ']';
  return s;
}

class SemigroupOracle;

// An element is a canonical key plus a pointer to the oracle it came from.
// Oracles are immutable and outlive every element they produce.
struct Element {
  const SemigroupOracle* origin = nullptr;
  Key key;

  bool operator==(const Element& o) const { return key == o.key; }
  bool operator!=(const Element& o) const { return key != o.key; }
  bool operator<(const Element& o) const { return compare_keys(key, o.key) < 0; }
};

struct domain_mismatch_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct scope_required_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct alignment_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Value in N ∪ {∞}. Addition saturates at infinity.
class ExtNat {
 public:
  constexpr ExtNat() : raw_(0) {}
  constexpr ExtNat(std::uint64_t v) : raw_(v) {}
  static constexpr ExtNat infinity() { return ExtNat(kInf, 0); }

  constexpr bool is_finite() const { return raw_ != kInf; }
  constexpr std::uint64_t value() const {
    return is_finite() ? raw_ : throw std::logic_error("ExtNat: value() on infinity");
  }

  friend constexpr bool operator==(ExtNat a, ExtNat b) { return a.raw_ == b.raw_; }
  friend constexpr bool operator!=(ExtNat a, ExtNat b) { return a.raw_ != b.raw_; }
  friend constexpr bool operator<(ExtNat a, ExtNat b) { return a.raw_ < b.raw_; }
  friend constexpr bool operator<=(ExtNat a, ExtNat b) { return a.raw_ <= b.raw_; }
  friend constexpr bool operator>(ExtNat a, ExtNat b) { return a.raw_ > b.raw_; }
  friend constexpr bool operator>=(ExtNat a, ExtNat b) { return a.raw_ >= b.raw_; }

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (!a.is_finite() || !b.is_finite()) return infinity();
    return ExtNat(a.raw_ + b.raw_);
  }

  std::string to_string() const { return is_finite() ? std::to_string(raw_) : "inf"; }

 private:
  constexpr ExtNat(std::uint64_t raw, int) : raw_(raw) {}
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t raw_;
};

}  // namespace invgeo
