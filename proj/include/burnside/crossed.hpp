#pragma once

// Crossed Burnside ring over the conjugation G-monoid: transitive crossed
// G-sets are pairs (H, a) with a in C_G(H), up to simultaneous conjugation.

#include <map>
#include <memory>

#include "burnside_ring.hpp"

namespace burnside {

struct CrossedPair {
  std::size_t cls;  // subgroup class; the subgroup is the class representative
  Elem marker;

  friend bool operator==(const CrossedPair&, const CrossedPair&) = default;
  friend auto operator<=>(const CrossedPair&, const CrossedPair&) = default;
};

class CrossedRing {
 public:
  explicit CrossedRing(BurnsideRingPtr burnside) : burnside_(std::move(burnside)) {
    const FiniteGroup& g = group();
    const SubgroupLattice& lat = burnside_->lattice();
    const Elem none = static_cast<Elem>(g.order());
    canon_.resize(lat.class_count());
    centralizers_.resize(lat.class_count());
    first_.resize(lat.class_count() + 1);
    for (std::size_t c = 0; c < lat.class_count(); ++c) {
      centralizers_[c] = centralizer(g, lat.class_rep(c));
      const Subgroup& n = lat.normalizer(c);
      auto& table = canon_[c];
      table.assign(g.order(), none);
      first_[c] = basis_.size();
      for (Elem a : centralizers_[c].elements()) {
        if (table[a] != none) continue;
        // a is the smallest member of its N_G(H)-orbit, since the scan is increasing
        for (Elem x : n.elements()) table[g.conj(x, a)] = a;
        basis_.push_back({c, a});
      }
    }
    first_[lat.class_count()] = basis_.size();
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  static std::shared_ptr<const CrossedRing> create(BurnsideRingPtr burnside) {
    return std::make_shared<const CrossedRing>(std::move(burnside));
  }

  const BurnsideRingPtr& burnside() const noexcept { return burnside_; }
  const FiniteGroup& group() const noexcept { return burnside_->group(); }
  const SubgroupLattice& lattice() const noexcept { return burnside_->lattice(); }

  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<CrossedPair>& basis() const noexcept { return basis_; }
  const CrossedPair& pair(std::size_t i) const { return basis_[i]; }
  const Subgroup& centralizer_of_class(std::size_t cls) const { return centralizers_[cls]; }

  /// Basis indices over one subgroup class.
  std::pair<std::size_t, std::size_t> class_range(std::size_t cls) const { return {first_[cls], first_[cls + 1]}; }

  std::size_t index_of(const CrossedPair& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw Error(ErrorCode::InvalidArgument, "not a canonical crossed pair");
    return it->second;
  }

  /// Canonical basis index of the pair (S, a) for an arbitrary subgroup S of the
  /// lattice and a in C_G(S).
  std::size_t canonical_index(std::size_t subgroup_index, Elem a) const {
    const FiniteGroup& g = group();
    const SubgroupLattice& lat = lattice();
    const std::size_t cls = lat.class_of(subgroup_index);
    Elem t = lat.conjugator(subgroup_index);
    Elem moved = g.conj(t, a);
    Elem m = canon_[cls][moved];
    if (m == static_cast<Elem>(g.order()))
      throw Error(ErrorCode::NotCentralizing, "marker " + std::to_string(a) + " does not centralize {" +
                                                  lat.subgroup(subgroup_index).id() + "}");
    return index_.at(CrossedPair{cls, m});
  }

  std::size_t canonical_index(const Subgroup& s, Elem a) const {
    return canonical_index(lattice().index_of(s), a);
  }

 private:
  BurnsideRingPtr burnside_;
  std::vector<CrossedPair> basis_;
  std::vector<std::size_t> first_;
  std::vector<Subgroup> centralizers_;
  std::vector<std::vector<Elem>> canon_;  // per class: marker -> canonical marker, |G| if not centralizing
  std::map<CrossedPair, std::size_t> index_;
};

using CrossedRingPtr = std::shared_ptr<const CrossedRing>;

class CrossedElement {
 public:
  explicit CrossedElement(CrossedRingPtr ring) : ring_(std::move(ring)) {}

  static CrossedElement basis(CrossedRingPtr ring, std::size_t i, Rational c = 1) {
    CrossedElement x(std::move(ring));
    x.add(i, c);
    return x;
  }
  static CrossedElement one(CrossedRingPtr ring) {
    std::size_t top = ring->lattice().class_count() - 1;
    std::size_t i = ring->index_of({top, ring->group().identity()});
    return basis(std::move(ring), i);
  }

  const CrossedRingPtr& ring() const noexcept { return ring_; }
  const std::map<std::size_t, Rational>& coeffs() const noexcept { return coeffs_; }

  Rational coeff(std::size_t i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(std::size_t i, const Rational& c) {
    if (i >= ring_->rank()) throw Error(ErrorCode::InvalidArgument, "crossed basis index out of range");
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_integral() const {
    for (const auto& [k, c] : coeffs_)
      if (!burnside::is_integer(c)) return false;
    return true;
  }
  bool is_effective() const {
    for (const auto& [k, c] : coeffs_)
      if (!burnside::is_integer(c) || c < 0) return false;
    return true;
  }

  CrossedElement& operator+=(const CrossedElement& y) {
    check_same(y);
    for (const auto& [k, c] : y.coeffs_) add(k, c);
    return *this;
  }
  CrossedElement& operator-=(const CrossedElement& y) {
    check_same(y);
    for (const auto& [k, c] : y.coeffs_) add(k, -c);
    return *this;
  }
  friend CrossedElement operator+(CrossedElement x, const CrossedElement& y) { return x += y; }
  friend CrossedElement operator-(CrossedElement x, const CrossedElement& y) { return x -= y; }
  friend CrossedElement operator*(const Rational& s, const CrossedElement& x) {
    CrossedElement r(x.ring_);
    for (const auto& [k, c] : x.coeffs_) r.add(k, s * c);
    return r;
  }
  friend bool operator==(const CrossedElement& a, const CrossedElement& b) {
    return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

  void check_same(const CrossedElement& y) const {
    if (ring_ != y.ring_) throw Error(ErrorCode::GroupMismatch, "elements of different crossed rings");
  }

 private:
  CrossedRingPtr ring_;
  std::map<std::size_t, Rational> coeffs_;
};

enum class DoubleCosetChoice { Smallest, Largest };

/// (H, a)·(K, b) = Σ_{u ∈ [H\G/K]} (H ∩ uKu^-1, a·ubu^-1) for arbitrary (not
/// necessarily canonical) pairs, re-canonicalized.
inline CrossedElement multiply_pairs(const CrossedRingPtr& ring, const Subgroup& h, Elem a, const Subgroup& k,
                                     Elem b, DoubleCosetChoice choice = DoubleCosetChoice::Smallest) {
  const FiniteGroup& g = ring->group();
  CrossedElement r(ring);
  for (Elem u : double_cosets(g, h, k)) {
    if (choice == DoubleCosetChoice::Largest) {
      Elem best = u;
      for (Elem x : h.elements())
        for (Elem y : k.elements()) best = std::max(best, g.mul(g.mul(x, u), y));
      u = best;
    }
    Subgroup meet = intersection(g, h, conjugate(g, k, u));
    r.add(ring->canonical_index(meet, g.mul(a, g.conj(u, b))), 1);
  }
  return r;
}

inline CrossedElement multiply_basis(const CrossedRingPtr& ring, std::size_t i, std::size_t j,
                                     DoubleCosetChoice choice = DoubleCosetChoice::Smallest) {
  const auto& p = ring->pair(i);
  const auto& q = ring->pair(j);
  return multiply_pairs(ring, ring->lattice().class_rep(p.cls), p.marker, ring->lattice().class_rep(q.cls),
                        q.marker, choice);
}

inline CrossedElement crossed_multiply(const CrossedElement& x, const CrossedElement& y,
                                       DoubleCosetChoice choice = DoubleCosetChoice::Smallest) {
  x.check_same(y);
  CrossedElement r(x.ring());
  for (const auto& [i, c] : x.coeffs())
    for (const auto& [j, d] : y.coeffs()) r += (c * d) * multiply_basis(x.ring(), i, j, choice);
  return r;
}

inline CrossedElement operator*(const CrossedElement& x, const CrossedElement& y) { return crossed_multiply(x, y); }

/// [G/H] ↦ (H, 1)
inline CrossedElement embed_burnside(const CrossedRingPtr& ring, const BurnsideElement& x) {
  if (x.ring() != ring->burnside()) throw Error(ErrorCode::GroupMismatch, "Burnside element over another group");
  CrossedElement r(ring);
  for (const auto& [k, c] : x.coeffs()) r.add(ring->index_of({k, ring->group().identity()}), c);
  return r;
}

/// Number of morphisms from the transitive crossed set (S, g) into the
/// transitive crossed set (K, b): #{sK : s^-1 S s ⊆ K and g = s b s^-1}.
inline Integer hom_count_pairs(const FiniteGroup& grp, const Subgroup& s_sub, Elem g, const Subgroup& k, Elem b) {
  Integer count = 0;
  for (Elem s : left_coset_reps(grp, k)) {
    if (grp.conj(s, b) != g) continue;
    Elem si = grp.inv(s);
    bool inside = true;
    for (Elem e : s_sub.elements())
      if (!k.contains(grp.conj(si, e))) {
        inside = false;
        break;
      }
    if (inside) ++count;
  }
  return count;
}

/// hom_count(t, x) for a transitive t given by basis index and x a
/// combination of basis pairs, extended linearly.
inline Rational hom_count(const CrossedRingPtr& ring, std::size_t t, const CrossedElement& x) {
  const auto& lat = ring->lattice();
  const auto& tp = ring->pair(t);
  Rational total = 0;
  for (const auto& [i, c] : x.coeffs()) {
    const auto& p = ring->pair(i);
    total += c * Rational(hom_count_pairs(ring->group(), lat.class_rep(tp.cls), tp.marker, lat.class_rep(p.cls),
                                          p.marker));
  }
  return total;
}

inline std::vector<Rational> hom_count_profile(const CrossedElement& x) {
  std::vector<Rational> v;
  for (std::size_t t = 0; t < x.ring()->rank(); ++t) v.push_back(hom_count(x.ring(), t, x));
  return v;
}

/// Isomorphism test for effective elements by comparing hom-count profiles.
inline bool iso_by_homcount(const CrossedElement& x, const CrossedElement& y) {
  x.check_same(y);
  if (!x.is_effective() || !y.is_effective())
    throw Error(ErrorCode::InvalidArgument, "hom counting compares effective crossed sets only");
  return hom_count_profile(x) == hom_count_profile(y);
}

// ---------------------------------------------------------------------------
// Group algebra and ζ

/// Sparse element of ℤG: group element -> coefficient, zeros dropped.
using GroupAlgebraElement = std::map<Elem, Integer>;

inline GroupAlgebraElement group_algebra_multiply(const FiniteGroup& g, const GroupAlgebraElement& x,
                                                  const GroupAlgebraElement& y) {
  GroupAlgebraElement r;
  for (const auto& [a, c] : x)
    for (const auto& [b, d] : y) r[g.mul(a, b)] += c * d;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

inline bool is_central_in(const FiniteGroup& g, const GroupAlgebraElement& z, const Subgroup& c) {
  for (Elem s : c.elements()) {
    GroupAlgebraElement moved;
    for (const auto& [a, k] : z) moved[g.conj(s, a)] += k;
    if (moved != z) return false;
  }
  return true;
}

/// ζ(x): per subgroup class U, the element z_U(x) ∈ ℤ C_G(U).
struct Zeta {
  CrossedRingPtr ring;
  std::vector<GroupAlgebraElement> components;

  friend bool operator==(const Zeta& a, const Zeta& b) {
    return a.ring == b.ring && a.components == b.components;
  }
};

/// z_U of the transitive crossed set (H, a): the sum of markers s a s^-1 over
/// the U-fixed cosets sH.
inline GroupAlgebraElement zeta_component_pair(const CrossedRing& ring, std::size_t u_cls, const CrossedPair& p) {
  const FiniteGroup& g = ring.group();
  const Subgroup& u = ring.lattice().class_rep(u_cls);
  const Subgroup& h = ring.lattice().class_rep(p.cls);
  GroupAlgebraElement z;
  if (h.size() % u.size() != 0) return z;
  for (Elem s : ring.burnside()->coset_reps(p.cls)) {
    Elem si = g.inv(s);
    bool fixed = true;
    for (Elem e : u.elements())
      if (!h.contains(g.conj(si, e))) {
        fixed = false;
        break;
      }
    if (fixed) z[g.conj(s, p.marker)] += 1;
  }
  return z;
}

inline Zeta zeta(const CrossedElement& x) {
  if (!x.is_integral()) throw Error(ErrorCode::NonIntegerCoefficients, "ζ is defined on integral elements");
  const CrossedRing& ring = *x.ring();
  Zeta out{x.ring(), std::vector<GroupAlgebraElement>(ring.lattice().class_count())};
  for (std::size_t u = 0; u < out.components.size(); ++u) {
    auto& z = out.components[u];
    for (const auto& [i, c] : x.coeffs())
      for (const auto& [e, k] : zeta_component_pair(ring, u, ring.pair(i))) z[e] += numerator(c) * k;
    std::erase_if(z, [](const auto& kv) { return kv.second == 0; });
  }
  return out;
}

inline Zeta zeta_multiply(const Zeta& a, const Zeta& b) {
  if (a.ring != b.ring) throw Error(ErrorCode::GroupMismatch, "ζ values over different rings");
  Zeta r{a.ring, {}};
  for (std::size_t u = 0; u < a.components.size(); ++u)
    r.components.push_back(group_algebra_multiply(a.ring->group(), a.components[u], b.components[u]));
  return r;
}

/// Each z_U commutes with C_G(U) and is supported on C_G(U).
inline bool zeta_is_central(const Zeta& z) {
  const CrossedRing& ring = *z.ring;
  for (std::size_t u = 0; u < z.components.size(); ++u) {
    const Subgroup& c = ring.centralizer_of_class(u);
    for (const auto& [e, k] : z.components[u])
      if (!c.contains(e)) return false;
    if (!is_central_in(ring.group(), z.components[u], c)) return false;
  }
  return true;
}

/// Matrix of ζ on the crossed basis: rows (U, c) for c ∈ C_G(U), one column
/// per basis pair.
inline Matrix<Rational> zeta_matrix(const CrossedRingPtr& ring) {
  std::vector<std::pair<std::size_t, Elem>> rows;
  for (std::size_t u = 0; u < ring->lattice().class_count(); ++u)
    for (Elem c : ring->centralizer_of_class(u).elements()) rows.emplace_back(u, c);
  Matrix<Rational> m(rows.size(), ring->rank());
  for (std::size_t j = 0; j < ring->rank(); ++j) {
    Zeta z = zeta(CrossedElement::basis(ring, j));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& comp = z.components[rows[r].first];
      auto it = comp.find(rows[r].second);
      if (it != comp.end()) m(r, j) = Rational(it->second);
    }
  }
  return m;
}

inline std::size_t zeta_rank(const CrossedRingPtr& ring) { return rank(zeta_matrix(ring)); }

// ---------------------------------------------------------------------------
// ×Fix

/// (U, a) ↦ (π(U), π(a)) if ker π ≤ U, else 0.
inline CrossedElement crossed_fix(const Surjection& pi, const CrossedRingPtr& target, const CrossedElement& x) {
  if (x.ring()->burnside() != pi.source()) throw Error(ErrorCode::GroupMismatch, "element is not over the source group");
  if (target->burnside() != pi.target()) throw Error(ErrorCode::GroupMismatch, "target ring is not over the image group");
  const auto& lat = x.ring()->lattice();
  CrossedElement r(target);
  for (const auto& [i, c] : x.coeffs()) {
    const auto& p = x.ring()->pair(i);
    const Subgroup& u = lat.class_rep(p.cls);
    if (!pi.kernel().is_subset_of(u)) continue;
    r.add(target->canonical_index(pi.image(u), pi(p.marker)), c);
  }
  return r;
}

struct CrossedFixResult {
  std::shared_ptr<const Surjection> quotient;
  CrossedRingPtr ring;
  CrossedElement element;
};

inline CrossedFixResult crossed_fix_n(const CrossedElement& x, const Subgroup& n, std::size_t cap = kDefaultLatticeCap) {
  auto pi = quotient_surjection(x.ring()->burnside(), n, cap);
  auto target = CrossedRing::create(pi->target());
  CrossedElement y = crossed_fix(*pi, target, x);
  return {std::move(pi), std::move(target), std::move(y)};
}

}  // namespace burnside
