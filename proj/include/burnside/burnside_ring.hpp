#pragma once

#include <map>
#include <memory>
#include <set>

#include "lattice.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace burnside {

/// Table of marks: mark(H, K) = |(G/K)^H| over subgroup classes. Stored row by
/// G-set: row K is the mark vector of [G/K], lower triangular with diagonal
/// |N_G(K)|/|K|.
class TableOfMarks {
 public:
  TableOfMarks() = default;
  explicit TableOfMarks(std::size_t n) : n_(n), m_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  long long mark(std::size_t fixing, std::size_t orbit) const { return m_[orbit * n_ + fixing]; }
  long long& mark(std::size_t fixing, std::size_t orbit) { return m_[orbit * n_ + fixing]; }

  bool is_lower_triangular() const {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t h = k + 1; h < n_; ++h)
        if (mark(h, k) != 0) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<long long> m_;
};

/// Immutable context shared by every element of B(G): the lattice and the
/// table of marks.
class BurnsideRing {
 public:
  explicit BurnsideRing(std::shared_ptr<const SubgroupLattice> lattice)
      : lattice_(std::move(lattice)) {
    const FiniteGroup& g = group();
    const std::size_t n = lattice_->class_count();
    tom_ = TableOfMarks(n);
    coset_reps_.resize(n);
    for (std::size_t k = 0; k < n; ++k) coset_reps_[k] = left_coset_reps(g, lattice_->class_rep(k));
    for (std::size_t k = 0; k < n; ++k) {
      const Subgroup& kk = lattice_->class_rep(k);
      for (std::size_t h = 0; h < n; ++h) tom_.mark(h, k) = count_fixed_cosets(lattice_->class_rep(h), kk, k);
    }
    if (!tom_.is_lower_triangular())
      throw Error(ErrorCode::InvariantViolation, "table of marks is not triangular");
    for (std::size_t k = 0; k < n; ++k)
      if (tom_.mark(k, k) != static_cast<long long>(lattice_->normalizer_order(k) / kk_size(k)))
        throw Error(ErrorCode::InvariantViolation, "table of marks diagonal");
  }

  static std::shared_ptr<const BurnsideRing> create(std::shared_ptr<const FiniteGroup> g,
                                                    std::size_t cap = kDefaultLatticeCap) {
    return std::make_shared<const BurnsideRing>(std::make_shared<const SubgroupLattice>(std::move(g), cap));
  }

  static std::shared_ptr<const BurnsideRing> create(FiniteGroup g, std::size_t cap = kDefaultLatticeCap) {
    return create(std::make_shared<const FiniteGroup>(std::move(g)), cap);
  }

  const FiniteGroup& group() const noexcept { return lattice_->group(); }
  const SubgroupLattice& lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const SubgroupLattice>& lattice_ptr() const noexcept { return lattice_; }
  std::size_t rank() const noexcept { return lattice_->class_count(); }
  const TableOfMarks& table_of_marks() const noexcept { return tom_; }

  /// Smallest element of each left coset of the class representative K.
  const std::vector<Elem>& coset_reps(std::size_t cls) const { return coset_reps_[cls]; }

  /// #{gK : H ≤ gKg^-1}, by direct scan of the cosets of K.
  long long count_fixed_cosets(const Subgroup& h, const Subgroup& k, std::size_t k_cls) const {
    const FiniteGroup& g = group();
    long long count = 0;
    for (Elem x : coset_reps_[k_cls]) {
      Elem xi = g.inv(x);
      bool fixed = true;
      for (Elem e : h.elements())
        if (!k.contains(g.conj(xi, e))) {
          fixed = false;
          break;
        }
      if (fixed) ++count;
    }
    return count;
  }

 private:
  std::size_t kk_size(std::size_t k) const { return lattice_->class_rep(k).size(); }

  std::shared_ptr<const SubgroupLattice> lattice_;
  TableOfMarks tom_;
  std::vector<std::vector<Elem>> coset_reps_;
};

using BurnsideRingPtr = std::shared_ptr<const BurnsideRing>;

/// Rational combination of transitive G-sets [G/H], keyed by subgroup class.
/// Zero coefficients are never stored.
class BurnsideElement {
 public:
  explicit BurnsideElement(BurnsideRingPtr ring) : ring_(std::move(ring)) {}

  static BurnsideElement basis(BurnsideRingPtr ring, std::size_t cls, Rational c = 1) {
    BurnsideElement x(std::move(ring));
    x.add(cls, c);
    return x;
  }
  static BurnsideElement one(BurnsideRingPtr ring) {
    std::size_t top = ring->rank() - 1;
    return basis(std::move(ring), top);
  }
  static BurnsideElement zero(BurnsideRingPtr ring) { return BurnsideElement(std::move(ring)); }

  const BurnsideRingPtr& ring() const noexcept { return ring_; }
  const std::map<std::size_t, Rational>& coeffs() const noexcept { return coeffs_; }

  Rational coeff(std::size_t cls) const {
    auto it = coeffs_.find(cls);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(std::size_t cls, const Rational& c) {
    if (cls >= ring_->rank()) throw Error(ErrorCode::InvalidArgument, "class index out of range");
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(cls, c);
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

  BurnsideElement& operator+=(const BurnsideElement& y) {
    check_same(y);
    for (const auto& [k, c] : y.coeffs_) add(k, c);
    return *this;
  }
  BurnsideElement& operator-=(const BurnsideElement& y) {
    check_same(y);
    for (const auto& [k, c] : y.coeffs_) add(k, -c);
    return *this;
  }
  friend BurnsideElement operator+(BurnsideElement x, const BurnsideElement& y) { return x += y; }
  friend BurnsideElement operator-(BurnsideElement x, const BurnsideElement& y) { return x -= y; }
  friend BurnsideElement operator*(const Rational& s, const BurnsideElement& x) {
    BurnsideElement r(x.ring_);
    for (const auto& [k, c] : x.coeffs_) r.add(k, s * c);
    return r;
  }

  friend bool operator==(const BurnsideElement& a, const BurnsideElement& b) {
    return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

  void check_same(const BurnsideElement& y) const {
    if (ring_ != y.ring_) throw Error(ErrorCode::GroupMismatch, "elements of different Burnside rings");
  }

 private:
  BurnsideRingPtr ring_;
  std::map<std::size_t, Rational> coeffs_;
};

/// Ghost image of an element: its marks |x^U| for every subgroup class U.
struct MarkVector {
  BurnsideRingPtr ring;
  std::vector<Rational> marks;

  friend bool operator==(const MarkVector& a, const MarkVector& b) {
    return a.ring == b.ring && a.marks == b.marks;
  }
};

inline MarkVector marks(const BurnsideElement& x) {
  const auto& tom = x.ring()->table_of_marks();
  MarkVector v{x.ring(), std::vector<Rational>(tom.size(), Rational(0))};
  for (const auto& [k, c] : x.coeffs())
    for (std::size_t h = 0; h <= k; ++h)
      if (tom.mark(h, k) != 0) v.marks[h] += c * tom.mark(h, k);
  return v;
}

/// Inverse of `marks`, by back substitution against the triangular table.
inline BurnsideElement from_marks(const MarkVector& v) {
  const auto& tom = v.ring->table_of_marks();
  const std::size_t n = tom.size();
  if (v.marks.size() != n) throw Error(ErrorCode::InvalidArgument, "mark vector has wrong dimension");
  std::vector<Rational> c(n, Rational(0));
  // v_h = Σ_{k ≥ h} c_k mark(h, k), solved from the top class down
  for (std::size_t h = n; h-- > 0;) {
    Rational rest = v.marks[h];
    for (std::size_t k = h + 1; k < n; ++k)
      if (c[k] != 0 && tom.mark(h, k) != 0) rest -= c[k] * tom.mark(h, k);
    c[h] = rest / tom.mark(h, h);
  }
  BurnsideElement x(v.ring);
  for (std::size_t k = 0; k < n; ++k) x.add(k, c[k]);
  return x;
}

enum class MultiplyPath { Marks, DoubleCoset };

/// [G/H]·[G/K] = Σ_{u ∈ [H\G/K]} [G/(H ∩ uKu^-1)]
inline BurnsideElement multiply_basis_double_coset(const BurnsideRingPtr& ring, std::size_t h,
                                                   std::size_t k) {
  const FiniteGroup& g = ring->group();
  const SubgroupLattice& lat = ring->lattice();
  const Subgroup& hh = lat.class_rep(h);
  const Subgroup& kk = lat.class_rep(k);
  BurnsideElement r(ring);
  for (Elem u : double_cosets(g, hh, kk))
    r.add(lat.class_of(intersection(g, hh, conjugate(g, kk, u))), 1);
  return r;
}

inline BurnsideElement multiply(const BurnsideElement& x, const BurnsideElement& y,
                                MultiplyPath path = MultiplyPath::Marks) {
  x.check_same(y);
  if (path == MultiplyPath::Marks) {
    MarkVector a = marks(x), b = marks(y);
    for (std::size_t i = 0; i < a.marks.size(); ++i) a.marks[i] *= b.marks[i];
    return from_marks(a);
  }
  BurnsideElement r(x.ring());
  for (const auto& [h, c] : x.coeffs())
    for (const auto& [k, d] : y.coeffs()) r += (c * d) * multiply_basis_double_coset(x.ring(), h, k);
  return r;
}

inline BurnsideElement operator*(const BurnsideElement& x, const BurnsideElement& y) {
  return multiply(x, y);
}

/// Gluck's idempotent e_H = Σ_{K ≤ H} μ(K,H) / |N_G(H):K| · [G/K], summed over
/// all subgroups K of the class representative H.
inline BurnsideElement gluck_idempotent(const BurnsideRingPtr& ring, std::size_t cls) {
  const SubgroupLattice& lat = ring->lattice();
  std::size_t h = lat.representative(cls);
  auto mu = lat.mobius_column(h);
  const long long n_order = static_cast<long long>(lat.normalizer_order(cls));
  BurnsideElement e(ring);
  for (std::size_t k : lat.subgroups_of(h)) {
    if (mu[k] == 0) continue;
    long long index = n_order / static_cast<long long>(lat.subgroup(k).size());
    e.add(lat.class_of(k), Rational(mu[k], index));
  }
  return e;
}

inline MarkVector indicator(const BurnsideRingPtr& ring, const std::vector<std::size_t>& classes) {
  MarkVector v{ring, std::vector<Rational>(ring->rank(), Rational(0))};
  for (auto c : classes) v.marks[c] = 1;
  return v;
}

/// Class of K^(∞) for every subgroup class K.
inline std::vector<std::size_t> perfect_core_classes(const BurnsideRing& ring) {
  const SubgroupLattice& lat = ring.lattice();
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < lat.class_count(); ++c)
    out.push_back(lat.class_of(perfect_core(ring.group(), lat.class_rep(c))));
  return out;
}

struct IntegralIdempotent {
  std::size_t perfect_class;  // class index of H (the trivial class for H = 1)
  std::string label;          // "1" or the canonical id of H
  BurnsideElement element;
};

/// Dress's primitive idempotents f_H = Σ e_K over classes K with K^(∞) ~ H, for
/// H trivial or perfect. The trivial one comes first, then perfect classes in
/// class order.
inline std::vector<IntegralIdempotent> integral_idempotents(const BurnsideRingPtr& ring) {
  const SubgroupLattice& lat = ring->lattice();
  auto cores = perfect_core_classes(*ring);
  std::vector<std::size_t> labels;
  for (std::size_t c = 0; c < lat.class_count(); ++c)
    if (cores[c] == c) labels.push_back(c);  // the trivial class and the perfect classes
  std::vector<IntegralIdempotent> out;
  for (std::size_t h : labels) {
    BurnsideElement f(ring);
    for (std::size_t k = 0; k < lat.class_count(); ++k)
      if (cores[k] == h) f += gluck_idempotent(ring, k);
    if (!f.is_integral())
      throw Error(ErrorCode::InvariantViolation, "Dress idempotent with non-integral coefficient");
    out.push_back({h, h == 0 ? std::string("1") : lat.class_id(h), std::move(f)});
  }
  return out;
}

inline constexpr std::size_t kDefaultCensusCap = 24;

/// Every idempotent of B(G), by brute force: scan all 0/1 mark vectors and keep
/// those whose preimage under the mark map is integral. The scan walks a Gray
/// code over an integer-scaled inverse of the table of marks.
inline std::vector<BurnsideElement> idempotent_census(const BurnsideRingPtr& ring,
                                                      std::size_t cap = kDefaultCensusCap) {
  const std::size_t n = ring->rank();
  if (n > cap)
    throw Error(ErrorCode::CapExceeded, std::to_string(n) + " subgroup classes exceed census cap " +
                                            std::to_string(cap));
  const auto& tom = ring->table_of_marks();
  // A(h, k) = mark(h, k); coefficients of from_marks(v) are A^-1 v
  Matrix<Rational> a(n, n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) a(h, k) = tom.mark(h, k);
  Matrix<Rational> ainv = inverse(a);
  Integer d = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d = boost::multiprecision::lcm(d, denominator(ainv(i, j)));
  if (d > Integer(1) << 40) throw Error(ErrorCode::CapExceeded, "table of marks denominators too large");
  const long long dd = static_cast<long long>(d);
  std::vector<long long> scaled(n * n);  // column-major: column h holds D·A^-1 e_h
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t h = 0; h < n; ++h) {
      Rational s = ainv(k, h) * dd;
      scaled[h * n + k] = static_cast<long long>(numerator(s));
    }

  std::vector<std::uint64_t> hits;
  std::vector<long long> acc(n, 0);
  auto integral = [&] {
    for (auto v : acc)
      if (v % dd != 0) return false;
    return true;
  };
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  if (integral()) hits.push_back(0);
  for (std::uint64_t i = 1; i < total; ++i) {
    std::size_t bit = static_cast<std::size_t>(std::countr_zero(i));
    gray ^= std::uint64_t{1} << bit;
    const long long* col = &scaled[bit * n];
    if (gray >> bit & 1)
      for (std::size_t k = 0; k < n; ++k) acc[k] += col[k];
    else
      for (std::size_t k = 0; k < n; ++k) acc[k] -= col[k];
    if (integral()) hits.push_back(gray);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<BurnsideElement> out;
  for (auto pattern : hits) {
    MarkVector v{ring, std::vector<Rational>(n, Rational(0))};
    for (std::size_t h = 0; h < n; ++h)
      if (pattern >> h & 1) v.marks[h] = 1;
    out.push_back(from_marks(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surjections, Fix_N and inflation

/// A surjective homomorphism between the groups of two Burnside rings, with
/// the induced correspondence of subgroup classes above the kernel.
class Surjection {
 public:
  Surjection(BurnsideRingPtr source, BurnsideRingPtr target, std::vector<Elem> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    const FiniteGroup& g = source_->group();
    const FiniteGroup& q = target_->group();
    if (map_.size() != g.order()) throw Error(ErrorCode::NotHomomorphism, "map has wrong length");
    std::vector<char> hit(q.order(), 0);
    for (Elem x = 0; x < g.order(); ++x) {
      if (map_[x] >= q.order()) throw Error(ErrorCode::NotHomomorphism, "image out of range");
      hit[map_[x]] = 1;
      for (Elem y = 0; y < g.order(); ++y)
        if (map_[g.mul(x, y)] != q.mul(map_[x], map_[y]))
          throw Error(ErrorCode::NotHomomorphism,
                      "map(" + std::to_string(x) + "*" + std::to_string(y) + ") differs");
    }
    for (Elem y = 0; y < q.order(); ++y)
      if (!hit[y]) throw Error(ErrorCode::NotHomomorphism, "not surjective: misses " + std::to_string(y));
    std::vector<Elem> ker;
    for (Elem x = 0; x < g.order(); ++x)
      if (map_[x] == q.identity()) ker.push_back(x);
    kernel_ = Subgroup(g.order(), std::move(ker));

    const auto& sl = source_->lattice();
    const auto& tl = target_->lattice();
    image_class_.assign(sl.class_count(), std::nullopt);
    for (std::size_t c = 0; c < sl.class_count(); ++c)
      if (kernel_.is_subset_of(sl.class_rep(c))) image_class_[c] = tl.class_of(image(sl.class_rep(c)));
    for (std::size_t c = 0; c < tl.class_count(); ++c)
      preimage_class_.push_back(sl.class_of(preimage(tl.class_rep(c))));
  }

  const BurnsideRingPtr& source() const noexcept { return source_; }
  const BurnsideRingPtr& target() const noexcept { return target_; }
  const Subgroup& kernel() const noexcept { return kernel_; }
  const std::vector<Elem>& table() const noexcept { return map_; }
  Elem operator()(Elem x) const { return map_[x]; }

  Subgroup image(const Subgroup& h) const {
    std::vector<Elem> out;
    for (Elem e : h.elements()) out.push_back(map_[e]);
    return Subgroup(target_->group().order(), std::move(out));
  }

  Subgroup preimage(const Subgroup& v) const {
    std::vector<Elem> out;
    for (Elem x = 0; x < map_.size(); ++x)
      if (v.contains(map_[x])) out.push_back(x);
    return Subgroup(source_->group().order(), std::move(out));
  }

  /// Class of V/N for a source class V containing the kernel N.
  std::optional<std::size_t> image_class(std::size_t source_class) const {
    return image_class_[source_class];
  }
  std::size_t preimage_class(std::size_t target_class) const { return preimage_class_[target_class]; }

 private:
  BurnsideRingPtr source_;
  BurnsideRingPtr target_;
  std::vector<Elem> map_;
  Subgroup kernel_;
  std::vector<std::optional<std::size_t>> image_class_;
  std::vector<std::size_t> preimage_class_;
};

/// The composite a∘b of surjections b: A → B and a: B → C.
inline Surjection compose(const Surjection& a, const Surjection& b) {
  if (b.target() != a.source()) throw Error(ErrorCode::GroupMismatch, "surjections do not compose");
  std::vector<Elem> map(b.table().size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = a(b(static_cast<Elem>(x)));
  return Surjection(b.source(), a.target(), std::move(map));
}

/// Fix_N along the kernel N of the surjection: [G/V] ↦ [(G/N)/(V/N)] if N ≤ V,
/// and 0 otherwise.
inline BurnsideElement fix(const Surjection& pi, const BurnsideElement& x) {
  if (x.ring() != pi.source()) throw Error(ErrorCode::GroupMismatch, "element is not over the source group");
  BurnsideElement r(pi.target());
  for (const auto& [k, c] : x.coeffs())
    if (auto img = pi.image_class(k)) r.add(*img, c);
  return r;
}

/// Inflation: a G/N-set regarded as a G-set, [(G/N)/(V/N)] ↦ [G/V].
inline BurnsideElement inflate(const Surjection& pi, const BurnsideElement& y) {
  if (y.ring() != pi.target()) throw Error(ErrorCode::GroupMismatch, "element is not over the target group");
  BurnsideElement r(pi.source());
  for (const auto& [k, c] : y.coeffs()) r.add(pi.preimage_class(k), c);
  return r;
}

/// The quotient G/N materialized as a new group with its own Burnside ring.
inline std::shared_ptr<const Surjection> quotient_surjection(const BurnsideRingPtr& ring,
                                                             const Subgroup& n,
                                                             std::size_t cap = kDefaultLatticeCap) {
  QuotientGroup q = quotient(ring->group(), n, ring->group().label() + "/{" + n.id() + "}");
  auto target = BurnsideRing::create(std::move(q.group), cap);
  return std::make_shared<const Surjection>(ring, std::move(target), std::move(q.projection));
}

struct FixResult {
  std::shared_ptr<const Surjection> quotient;
  BurnsideElement element;
};

inline FixResult fix_n(const BurnsideElement& x, const Subgroup& n, std::size_t cap = kDefaultLatticeCap) {
  auto pi = quotient_surjection(x.ring(), n, cap);
  BurnsideElement y = fix(*pi, x);
  return {std::move(pi), std::move(y)};
}

}  // namespace burnside
