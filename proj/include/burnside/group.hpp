#pragma once

// Explicit finite groups over element indices, subgroups as sorted index sets,
// and the elementwise machinery (closures, centralizers, cosets, derived series)
// that every other part of the library is built on.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace burnside {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultLatticeCap = 256;
inline constexpr std::size_t kDefaultElementCap = 10000;

class FiniteGroup {
 public:
  /// Validates the group axioms. Associativity is checked on every triple up to
  /// order 200 and on a fixed-seed random sample above that.
  static FiniteGroup from_cayley(const std::vector<std::vector<Elem>>& table,
                                 std::string label = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty Cayley table");
    std::vector<Elem> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n)
        throw Error(ErrorCode::InvalidArgument,
                    "Cayley table row " + std::to_string(i) + " has length " +
                        std::to_string(table[i].size()) + ", expected " + std::to_string(n));
      for (Elem e : table[i]) {
        if (e >= n)
          throw Error(ErrorCode::InvalidArgument,
                      "Cayley table entry " + std::to_string(e) + " out of range in row " +
                          std::to_string(i));
        flat.push_back(e);
      }
    }
    return from_flat(n, std::move(flat), std::move(label), true);
  }

  /// Trusted constructor for tables produced by the library itself.
  static FiniteGroup from_flat(std::size_t n, std::vector<Elem> flat, std::string label,
                               bool validate) {
    FiniteGroup g;
    g.order_ = n;
    g.table_ = std::move(flat);
    g.label_ = std::move(label);

    std::optional<Elem> identity;
    for (Elem e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
      if (ok) identity = e;
    }
    if (!identity) throw Error(ErrorCode::NoIdentity, "no two-sided identity element");
    g.identity_ = *identity;

    g.inv_.assign(n, 0);
    for (Elem x = 0; x < n; ++x) {
      std::optional<Elem> inverse;
      for (Elem y = 0; y < n; ++y) {
        if (g.mul(y, x) == g.identity_ && g.mul(x, y) == g.identity_) {
          inverse = y;
          break;
        }
      }
      if (!inverse)
        throw Error(ErrorCode::NoInverse, "element " + std::to_string(x) + " has no inverse");
      g.inv_[x] = *inverse;
    }

    if (validate) {
      auto check = [&](Elem a, Elem b, Elem c) {
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "*" +
                                                     std::to_string(b) + ")*" +
                                                     std::to_string(c) + " != " +
                                                     std::to_string(a) + "*(" +
                                                     std::to_string(b) + "*" +
                                                     std::to_string(c) + ")");
      };
      if (n <= 200) {
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) check(a, b, c);
      } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
        for (int i = 0; i < 200000; ++i) check(pick(rng), pick(rng), pick(rng));
      }
    }
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  const std::string& label() const noexcept { return label_; }

  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
  /// a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }

  Elem pow(Elem a, long long k) const {
    if (k < 0) {
      a = inv_[a];
      k = -k;
    }
    Elem r = identity_;
    while (k > 0) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<std::vector<Elem>> cayley_rows() const {
    std::vector<std::vector<Elem>> rows(order_);
    for (std::size_t i = 0; i < order_; ++i)
      rows[i].assign(table_.begin() + static_cast<std::ptrdiff_t>(i * order_),
                     table_.begin() + static_cast<std::ptrdiff_t>((i + 1) * order_));
    return rows;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  Elem identity_ = 0;
  std::string label_;
};

/// A subgroup stored as its strictly increasing element list plus a membership
/// bitset sized to the parent group.
class Subgroup {
 public:
  Subgroup() = default;

  Subgroup(std::size_t group_order, std::vector<Elem> elements)
      : elements_(std::move(elements)), bits_((group_order + 63) / 64, 0) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (Elem e : elements_) bits_[e / 64] |= std::uint64_t{1} << (e % 64);
  }

  const std::vector<Elem>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::uint64_t>& bits() const noexcept { return bits_; }

  bool contains(Elem e) const {
    return e / 64 < bits_.size() && ((bits_[e / 64] >> (e % 64)) & 1u);
  }

  bool is_subset_of(const Subgroup& other) const {
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if ((bits_[i] & ~other.bits_[i]) != 0) return false;
    return true;
  }

  /// Hyphen-joined element indices, the stable public name of a subgroup.
  std::string id() const {
    std::string s;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) s += '-';
      s += std::to_string(elements_[i]);
    }
    return s;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements_ == b.elements_;
  }
  friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<Elem> elements_;
  std::vector<std::uint64_t> bits_;
};

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& bits) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : bits) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }
};

// ---------------------------------------------------------------------------
// Subgroup construction

/// Closure of a generating set, breadth-first from the identity.
inline Subgroup generate(const FiniteGroup& g, std::span<const Elem> generators) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> elems{g.identity()};
  seen[g.identity()] = 1;
  std::vector<Elem> gens;
  for (Elem x : generators)
    if (x != g.identity()) gens.push_back(x);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Elem s : gens) {
      Elem y = g.mul(elems[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        elems.push_back(y);
      }
    }
  }
  return Subgroup(g.order(), std::move(elems));
}

inline Subgroup generate(const FiniteGroup& g, std::initializer_list<Elem> generators) {
  std::vector<Elem> v(generators);
  return generate(g, std::span<const Elem>(v));
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup(g.order(), {g.identity()});
}

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(g.order(), std::move(all));
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (!h.contains(g.identity())) return false;
  for (Elem a : h.elements()) {
    if (!h.contains(g.inv(a))) return false;
    for (Elem b : h.elements())
      if (!h.contains(g.mul(a, b))) return false;
  }
  return g.order() % h.size() == 0;
}

/// Validating constructor: identity, closure under mul/inv, Lagrange.
inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elements) {
  for (Elem e : elements)
    if (e >= g.order())
      throw Error(ErrorCode::NotASubgroup, "element " + std::to_string(e) + " out of range");
  Subgroup h(g.order(), std::move(elements));
  if (!is_subgroup(g, h)) throw Error(ErrorCode::NotASubgroup, "{" + h.id() + "} is not closed");
  return h;
}

inline Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Elem x) {
  std::vector<Elem> out;
  out.reserve(h.size());
  for (Elem e : h.elements()) out.push_back(g.conj(x, e));
  return Subgroup(g.order(), std::move(out));
}

inline Subgroup intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(out));
  return Subgroup(g.order(), std::move(out));
}

inline Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> set) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem s : set)
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Subgroup(g.order(), std::move(out));
}

inline Subgroup centralizer(const FiniteGroup& g, const Subgroup& h) {
  return centralizer(g, std::span<const Elem>(h.elements()));
}

inline Subgroup center(const FiniteGroup& g) { return centralizer(g, whole_group(g)); }

inline bool normalizes(const FiniteGroup& g, Elem x, const Subgroup& h) {
  for (Elem e : h.elements())
    if (!h.contains(g.conj(x, e))) return false;
  return true;
}

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (normalizes(g, x, h)) out.push_back(x);
  return Subgroup(g.order(), std::move(out));
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elem x = 0; x < g.order(); ++x)
    if (!normalizes(g, x, h)) return false;
  return true;
}

/// Smallest element of every left coset xH, in increasing order.
inline std::vector<Elem> left_coset_reps(const FiniteGroup& g, const Subgroup& h) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (Elem e : h.elements()) seen[g.mul(x, e)] = 1;
  }
  return reps;
}

/// One representative per double coset HxK, namely its smallest element.
inline std::vector<Elem> double_cosets(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (Elem a : h.elements()) {
      Elem ax = g.mul(a, x);
      for (Elem b : k.elements()) seen[g.mul(ax, b)] = 1;
    }
  }
  return reps;
}

inline std::size_t double_coset_size(const FiniteGroup& g, const Subgroup& h, const Subgroup& k,
                                     Elem x) {
  // |HxK| = |H||K| / |H ∩ xKx^-1|
  return h.size() * k.size() / intersection(g, h, conjugate(g, k, x)).size();
}

struct ConjugacyClass {
  Elem representative;
  std::size_t size;
};

/// Conjugacy classes of elements, each represented by its smallest index, in
/// order of representative.
inline std::vector<ConjugacyClass> element_classes(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<ConjugacyClass> out;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::size_t count = 0;
    for (Elem y = 0; y < g.order(); ++y) {
      Elem c = g.conj(y, x);
      if (!seen[c]) {
        seen[c] = 1;
        ++count;
      }
    }
    out.push_back({x, count});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived series, perfect cores, O^p

inline Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> gens;
  for (Elem a : h.elements())
    for (Elem b : h.elements()) {
      Elem c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return generate(g, std::span<const Elem>(gens));
}

/// H = H^(1) ≥ H^(2) ≥ ... up to and including the first repeated term.
inline std::vector<Subgroup> derived_series(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Subgroup> series{h};
  for (;;) {
    Subgroup next = commutator_subgroup(g, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  return derived_series(g, whole_group(g));
}

inline Subgroup perfect_core(const FiniteGroup& g, const Subgroup& h) {
  return derived_series(g, h).back();
}

inline Subgroup perfect_core(const FiniteGroup& g) { return perfect_core(g, whole_group(g)); }

/// Perfect means nontrivial and equal to its own derived subgroup.
inline bool is_perfect(const FiniteGroup& g, const Subgroup& h) {
  return h.size() > 1 && commutator_subgroup(g, h) == h;
}

inline bool is_soluble(const FiniteGroup& g, const Subgroup& h) {
  return perfect_core(g, h).size() == 1;
}

inline bool is_soluble(const FiniteGroup& g) { return is_soluble(g, whole_group(g)); }

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// O^p(G): the subgroup generated by all p'-elements, which is the smallest
/// normal subgroup with p-group quotient.
inline Subgroup o_p(const FiniteGroup& g, long long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  std::vector<Elem> gens;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) % static_cast<std::size_t>(p) != 0) gens.push_back(x);
  return generate(g, std::span<const Elem>(gens));
}

// ---------------------------------------------------------------------------
// Quotients and products

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Elem> projection;  // parent element -> coset index
};

/// G/N with cosets numbered by their smallest element.
inline QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n, std::string label = {}) {
  if (!is_normal(g, n)) throw Error(ErrorCode::NotNormal, "{" + n.id() + "} is not normal");
  std::vector<Elem> reps = left_coset_reps(g, n);
  std::vector<Elem> proj(g.order(), 0);
  for (Elem i = 0; i < reps.size(); ++i)
    for (Elem e : n.elements()) proj[g.mul(reps[i], e)] = i;
  const std::size_t q = reps.size();
  std::vector<Elem> flat(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) flat[i * q + j] = proj[g.mul(reps[i], reps[j])];
  if (label.empty()) label = g.label() + "/N";
  return {FiniteGroup::from_flat(q, std::move(flat), std::move(label), false), std::move(proj)};
}

/// A x B with (a, b) at index a*|B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string label) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> flat(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      flat[x * n + y] = static_cast<Elem>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
  return FiniteGroup::from_flat(n, std::move(flat), std::move(label), false);
}

}  // namespace burnside
