#pragma once

// Mackey functors on finite G-sets with values in finite-dimensional vector
// spaces, the action of crossed G-sets through η, and three instances:
// the Burnside functor, fixed points FP_V and fixed quotients FQ_V.
//
// push(f) is M_*(f) : M(X) -> M(Y), pull(f) is M^*(f) : M(Y) -> M(X), both as
// matrices acting on coordinate columns.

#include <map>

#include "crossed.hpp"
#include "gset.hpp"
#include "linalg.hpp"

namespace burnside {

template <class T>
class MackeyFunctor {
 public:
  virtual ~MackeyFunctor() = default;
  virtual std::string name() const = 0;
  virtual const GroupPtr& group_ptr() const = 0;
  virtual std::size_t dim(const GSet& x) const = 0;
  virtual Matrix<T> push(const GMap& f) const = 0;
  virtual Matrix<T> pull(const GMap& f) const = 0;

  void check_group(const GSet& x) const {
    if (!same_group(group_ptr(), x.group_ptr()))
      throw Error(ErrorCode::GroupMismatch, name() + " is defined over another group");
  }
};

/// Converts an exact rational coefficient into the field T.
template <class T>
T coerce(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    const Integer p = T::modulus;
    Integer d = denominator(q) % p;
    if (d == 0) throw Error(ErrorCode::CoefficientMismatch, to_string(q) + " has no image mod " + to_string(p));
    Integer n = numerator(q) % p;
    if (n < 0) n += p;
    return T(static_cast<long long>(n)) / T(static_cast<long long>(d));
  }
}

// ---------------------------------------------------------------------------
// Burnside functor: M(X) has basis the spans G/H -> X up to isomorphism, i.e.
// pairs (H class, x ∈ X^H) modulo N_G(H).

template <class T>
class BurnsideMackey final : public MackeyFunctor<T> {
 public:
  explicit BurnsideMackey(std::shared_ptr<const SubgroupLattice> lattice) : lattice_(std::move(lattice)) {}

  std::string name() const override { return "burnside"; }
  const GroupPtr& group_ptr() const override { return lattice_->group_ptr(); }
  const SubgroupLattice& lattice() const noexcept { return *lattice_; }

  struct Basis {
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // (class, point)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  };

  Basis basis(const GSet& x) const {
    this->check_group(x);
    Basis b;
    for (std::size_t c = 0; c < lattice_->class_count(); ++c) {
      const Subgroup& r = lattice_->class_rep(c);
      for (std::size_t p = 0; p < x.size(); ++p)
        if (x.is_fixed(r, p) && min_in_normalizer_orbit(x, c, p) == p) {
          b.index.emplace(std::pair{c, p}, b.spans.size());
          b.spans.emplace_back(c, p);
        }
    }
    return b;
  }

  std::size_t dim(const GSet& x) const override { return basis(x).spans.size(); }

  /// Basis position of the span G/S -> X, eS ↦ p, for any subgroup S fixing p.
  std::size_t canonical(const Basis& b, const GSet& x, const Subgroup& s, std::size_t p) const {
    std::size_t i = lattice_->index_of(s);
    std::size_t c = lattice_->class_of(i);
    std::size_t q = x.act(lattice_->conjugator(i), p);
    return b.index.at({c, min_in_normalizer_orbit(x, c, q)});
  }

  Matrix<T> push(const GMap& f) const override {
    Basis bx = basis(*f.source()), by = basis(*f.target());
    Matrix<T> m(by.spans.size(), bx.spans.size());
    for (std::size_t j = 0; j < bx.spans.size(); ++j) {
      auto [c, p] = bx.spans[j];
      m(canonical(by, *f.target(), lattice_->class_rep(c), f(p)), j) += T(1);
    }
    return m;
  }

  /// (H, z) ↦ Σ_{x ∈ [H \ f^-1(z)]} (H ∩ G_x, x)
  Matrix<T> pull(const GMap& f) const override {
    const GSet& x = *f.source();
    const FiniteGroup& g = x.group();
    Basis bx = basis(x), bz = basis(*f.target());
    Matrix<T> m(bx.spans.size(), bz.spans.size());
    for (std::size_t j = 0; j < bz.spans.size(); ++j) {
      auto [c, z] = bz.spans[j];
      const Subgroup& h = lattice_->class_rep(c);
      std::vector<char> seen(x.size(), 0);
      for (std::size_t p = 0; p < x.size(); ++p) {
        if (f(p) != z || seen[p]) continue;
        for (Elem e : h.elements()) seen[x.act(e, p)] = 1;
        Subgroup meet = intersection(g, h, x.stabilizer(p));
        m(canonical(bx, x, meet, p), j) += T(1);
      }
    }
    return m;
  }

 private:
  std::size_t min_in_normalizer_orbit(const GSet& x, std::size_t cls, std::size_t p) const {
    std::size_t best = p;
    for (Elem n : lattice_->normalizer(cls).elements()) best = std::min(best, x.act(n, p));
    return best;
  }

  std::shared_ptr<const SubgroupLattice> lattice_;
};

// ---------------------------------------------------------------------------
// Representations

template <class T>
struct Representation {
  GroupPtr group;
  std::vector<Matrix<T>> rho;  // one matrix per group element

  std::size_t dim() const { return rho.empty() ? 0 : rho[0].rows(); }

  void validate() const {
    const FiniteGroup& g = *group;
    if (rho.size() != g.order()) throw Error(ErrorCode::InvalidArgument, "one matrix per group element expected");
    const std::size_t n = dim();
    for (const auto& m : rho)
      if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::InvalidArgument, "representation matrices must be square of equal size");
    if (!(rho[g.identity()] == Matrix<T>::identity(n)))
      throw Error(ErrorCode::NotHomomorphism, "identity does not act as the identity matrix");
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b)
        if (!(rho[a] * rho[b] == rho[g.mul(a, b)]))
          throw Error(ErrorCode::NotHomomorphism, "rho(" + std::to_string(a) + ")rho(" + std::to_string(b) + ") differs");
  }
};

template <class T>
Representation<T> trivial_representation(GroupPtr g, std::size_t dim = 1) {
  Representation<T> r{g, std::vector<Matrix<T>>(g->order(), Matrix<T>::identity(dim))};
  return r;
}

/// Permutation representation on T^X.
template <class T>
Representation<T> permutation_representation(const GSet& x) {
  Representation<T> r{x.group_ptr(), {}};
  for (Elem g = 0; g < x.group().order(); ++g) {
    Matrix<T> m(x.size(), x.size());
    for (std::size_t p = 0; p < x.size(); ++p) m(x.act(g, p), p) = T(1);
    r.rho.push_back(std::move(m));
  }
  return r;
}

template <class T>
Representation<T> regular_representation(const GroupPtr& g) {
  return permutation_representation<T>(GSet::cosets(g, trivial_subgroup(*g)));
}

/// A one-dimensional representation from a ±1 character; validated.
template <class T>
Representation<T> character_representation(const GroupPtr& g, const std::vector<int>& values) {
  if (values.size() != g->order()) throw Error(ErrorCode::InvalidArgument, "one character value per element");
  Representation<T> r{g, {}};
  for (int v : values) {
    Matrix<T> m(1, 1);
    m(0, 0) = T(v);
    r.rho.push_back(std::move(m));
  }
  r.validate();
  return r;
}

/// The sign character of a group with an index-2 subgroup, or of a group of
/// order 2: -1 off the subgroup.
template <class T>
Representation<T> sign_representation(const GroupPtr& g, const Subgroup& index_two) {
  if (index_two.size() * 2 != g->order()) throw Error(ErrorCode::InvalidArgument, "sign needs an index-2 subgroup");
  std::vector<int> v(g->order());
  for (Elem x = 0; x < g->order(); ++x) v[x] = index_two.contains(x) ? 1 : -1;
  return character_representation<T>(g, v);
}

// ---------------------------------------------------------------------------
// FP_V and FQ_V. Elements of V^X are functions X -> V stored as |X|·dim V
// vectors, point-major.

namespace detail {

template <class T>
std::vector<T> apply_rho(const Matrix<T>& m, const T* v, std::size_t n) {
  std::vector<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!is_zero(v[j]) && !is_zero(m(i, j))) out[i] += m(i, j) * v[j];
  return out;
}

/// (f_*φ)(y) = Σ_{f(x)=y} φ(x)
template <class T>
std::vector<T> push_function(const GMap& f, const std::vector<T>& phi, std::size_t n) {
  std::vector<T> out(f.target()->size() * n, T(0));
  for (std::size_t x = 0; x < f.source()->size(); ++x)
    for (std::size_t k = 0; k < n; ++k) out[f(x) * n + k] += phi[x * n + k];
  return out;
}

/// (f^*ψ)(x) = ψ(f(x))
template <class T>
std::vector<T> pull_function(const GMap& f, const std::vector<T>& psi, std::size_t n) {
  std::vector<T> out(f.source()->size() * n, T(0));
  for (std::size_t x = 0; x < f.source()->size(); ++x)
    for (std::size_t k = 0; k < n; ++k) out[x * n + k] = psi[f(x) * n + k];
  return out;
}

}  // namespace detail

/// Shared coordinate machinery: a Mackey functor realized inside V^X, with
/// push and pull induced by the function-level maps above. Derived supplies a
/// per-G-set Chart (local data per orbit) and the embed/extract pair.
template <class T, class Derived>
class FunctionModelMackey : public MackeyFunctor<T> {
 public:
  explicit FunctionModelMackey(Representation<T> v) : v_(std::move(v)) { v_.validate(); }

  const GroupPtr& group_ptr() const override { return v_.group; }
  const Representation<T>& representation() const noexcept { return v_; }

  std::size_t dim(const GSet& x) const override {
    this->check_group(x);
    return self().chart(x).dim;
  }

  Matrix<T> push(const GMap& f) const override {
    return assemble(f, [&](const std::vector<T>& phi) { return detail::push_function(f, phi, v_.dim()); }, true);
  }
  Matrix<T> pull(const GMap& f) const override {
    return assemble(f, [&](const std::vector<T>& psi) { return detail::pull_function(f, psi, v_.dim()); }, false);
  }

 protected:
  Representation<T> v_;

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }

  template <class F>
  Matrix<T> assemble(const GMap& f, F&& apply, bool covariant) const {
    const GSet& from = covariant ? *f.source() : *f.target();
    const GSet& to = covariant ? *f.target() : *f.source();
    this->check_group(from);
    auto cf = self().chart(from);
    auto ct = self().chart(to);
    Matrix<T> m(ct.dim, cf.dim);
    for (std::size_t j = 0; j < cf.dim; ++j) {
      std::vector<T> e(cf.dim, T(0));
      e[j] = T(1);
      std::vector<T> col = self().extract(to, ct, apply(self().embed(from, cf, e)));
      for (std::size_t i = 0; i < ct.dim; ++i) m(i, j) = col[i];
    }
    return m;
  }
};

/// FP_V(X) = equivariant functions X -> V = ⊕_{x ∈ [G\X]} V^{G_x}.
template <class T>
class FixedPointMackey final : public FunctionModelMackey<T, FixedPointMackey<T>> {
 public:
  using FunctionModelMackey<T, FixedPointMackey<T>>::FunctionModelMackey;
  std::string name() const override { return "fp"; }

  /// Basis of V^H as columns.
  Matrix<T> invariants(const Subgroup& h) const { return invariant_basis(h).basis; }

  KernelBasis<T> invariant_basis(const Subgroup& h) const {
    const std::size_t n = this->v_.dim();
    Matrix<T> stacked(n * h.size(), n);
    std::size_t r = 0;
    for (Elem g : h.elements()) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) stacked(r + i, j) = this->v_.rho[g](i, j) - (i == j ? T(1) : T(0));
      r += n;
    }
    return kernel_basis(stacked);
  }

  struct Chart {
    std::vector<KernelBasis<T>> bases;  // per orbit
    std::size_t dim = 0;
  };

  Chart chart(const GSet& x) const {
    Chart c;
    for (std::size_t rep : x.orbit_reps()) {
      c.bases.push_back(invariant_basis(x.stabilizer(rep)));
      c.dim += c.bases.back().free.size();
    }
    return c;
  }

  std::vector<T> embed(const GSet& x, const Chart& c, const std::vector<T>& coords) const {
    const std::size_t n = this->v_.dim();
    std::vector<T> phi(x.size() * n, T(0));
    std::vector<std::vector<T>> at_rep;
    std::size_t offset = 0;
    for (const auto& kb : c.bases) {
      const auto& b = kb.basis;
      std::vector<T> v(n, T(0));
      for (std::size_t k = 0; k < b.cols(); ++k) {
        if (is_zero(coords[offset + k])) continue;
        for (std::size_t i = 0; i < n; ++i)
          if (!is_zero(b(i, k))) v[i] += b(i, k) * coords[offset + k];
      }
      offset += b.cols();
      at_rep.push_back(std::move(v));
    }
    for (std::size_t p = 0; p < x.size(); ++p) {
      auto w = detail::apply_rho(this->v_.rho[x.transversal(p)], at_rep[x.orbit_of(p)].data(), n);
      std::copy(w.begin(), w.end(), phi.begin() + static_cast<std::ptrdiff_t>(p * n));
    }
    return phi;
  }

  std::vector<T> extract(const GSet& x, const Chart& c, const std::vector<T>& phi) const {
    const std::size_t n = this->v_.dim();
    std::vector<T> coords;
    for (std::size_t o = 0; o < x.orbit_count(); ++o) {
      const auto& kb = c.bases[o];
      if (kb.free.empty()) continue;
      const std::size_t rep = x.orbit_reps()[o];
      std::vector<T> v(phi.begin() + static_cast<std::ptrdiff_t>(rep * n),
                       phi.begin() + static_cast<std::ptrdiff_t>((rep + 1) * n));
      auto k = kb.coordinates(v);
      coords.insert(coords.end(), k.begin(), k.end());
    }
    return coords;
  }
};

/// FQ_V(X) = (T X ⊗ V)_G = ⊕_{x ∈ [G\X]} V_{G_x}; push is the projection
/// induced by summing over fibres, pull the relative norm.
template <class T>
class FixedQuotientMackey final : public FunctionModelMackey<T, FixedQuotientMackey<T>> {
 public:
  using FunctionModelMackey<T, FixedQuotientMackey<T>>::FunctionModelMackey;
  std::string name() const override { return "fq"; }

  /// V_H = V / span{ρ(h)v - v}.
  QuotientSpace<T> coinvariants(const Subgroup& h) const {
    const std::size_t n = this->v_.dim();
    std::vector<std::vector<T>> spanning;
    for (Elem g : h.elements())
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<T> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = this->v_.rho[g](i, j) - (i == j ? T(1) : T(0));
        spanning.push_back(std::move(col));
      }
    return QuotientSpace<T>(n, spanning);
  }

  struct Chart {
    std::vector<QuotientSpace<T>> spaces;  // per orbit
    std::size_t dim = 0;
  };

  Chart chart(const GSet& x) const {
    Chart c;
    for (std::size_t rep : x.orbit_reps()) {
      c.spaces.push_back(coinvariants(x.stabilizer(rep)));
      c.dim += c.spaces.back().dimension();
    }
    return c;
  }

  std::vector<T> embed(const GSet& x, const Chart& c, const std::vector<T>& coords) const {
    const std::size_t n = this->v_.dim();
    std::vector<T> phi(x.size() * n, T(0));
    std::size_t offset = 0;
    for (std::size_t o = 0; o < x.orbit_count(); ++o) {
      const std::size_t rep = x.orbit_reps()[o];
      const auto& q = c.spaces[o];
      for (std::size_t k = 0; k < q.dimension(); ++k) {
        if (is_zero(coords[offset + k])) continue;
        auto v = q.lift(k);
        for (std::size_t i = 0; i < n; ++i)
          if (!is_zero(v[i])) phi[rep * n + i] += v[i] * coords[offset + k];
      }
      offset += q.dimension();
    }
    return phi;
  }

  // x ⊗ u with x = t·rep is identified with rep ⊗ ρ(t)^-1 u
  std::vector<T> extract(const GSet& x, const Chart& c, const std::vector<T>& phi) const {
    const std::size_t n = this->v_.dim();
    const FiniteGroup& g = x.group();
    std::vector<std::vector<T>> acc(x.orbit_count(), std::vector<T>(n, T(0)));
    for (std::size_t p = 0; p < x.size(); ++p) {
      auto w = detail::apply_rho(this->v_.rho[g.inv(x.transversal(p))], phi.data() + p * n, n);
      auto& a = acc[x.orbit_of(p)];
      for (std::size_t i = 0; i < n; ++i) a[i] += w[i];
    }
    std::vector<T> coords;
    for (std::size_t o = 0; o < x.orbit_count(); ++o) {
      auto k = c.spaces[o].reduce(acc[o]);
      coords.insert(coords.end(), k.begin(), k.end());
    }
    return coords;
  }
};

// ---------------------------------------------------------------------------
// Concrete crossed G-sets and η

struct CrossedGSetConcrete {
  GSetPtr x;
  std::vector<Elem> marker;  // w : X -> G with w(g·x) = g w(x) g^-1

  void validate() const {
    const FiniteGroup& g = x->group();
    if (marker.size() != x->size()) throw Error(ErrorCode::InvalidArgument, "one marker per point expected");
    for (Elem s = 0; s < g.order(); ++s)
      for (std::size_t p = 0; p < x->size(); ++p)
        if (marker[x->act(s, p)] != g.conj(s, marker[p]))
          throw Error(ErrorCode::NotEquivariant, "marker map is not conjugation-equivariant at point " + std::to_string(p));
  }
};

/// G/H with marker gH ↦ g a g^-1.
inline CrossedGSetConcrete crossed_from_pair(const GroupPtr& g, const Subgroup& h, Elem a) {
  auto x = make_gset(GSet::cosets(g, h));
  CrossedGSetConcrete c{x, {}};
  for (Elem r : left_coset_reps(*g, h)) c.marker.push_back(g->conj(r, a));
  c.validate();
  return c;
}

inline CrossedGSetConcrete crossed_unit(const GroupPtr& g) { return crossed_from_pair(g, whole_group(*g), g->identity()); }

inline CrossedGSetConcrete crossed_sum(const CrossedGSetConcrete& a, const CrossedGSetConcrete& b) {
  CrossedGSetConcrete c{make_gset(disjoint_union(*a.x, *b.x)), a.marker};
  c.marker.insert(c.marker.end(), b.marker.begin(), b.marker.end());
  c.validate();
  return c;
}

inline CrossedGSetConcrete crossed_product(const CrossedGSetConcrete& a, const CrossedGSetConcrete& b) {
  const FiniteGroup& g = a.x->group();
  CrossedGSetConcrete c{make_gset(product(*a.x, *b.x)), {}};
  for (std::size_t p = 0; p < a.x->size(); ++p)
    for (std::size_t q = 0; q < b.x->size(); ++q) c.marker.push_back(g.mul(a.marker[p], b.marker[q]));
  c.validate();
  return c;
}

struct EtaMaps {
  GSetPtr xy;  // X × Y
  GMap pi;     // (x, y) ↦ y
  GMap tau;    // (x, y) ↦ w(x)·y
};

inline EtaMaps eta_maps(const CrossedGSetConcrete& c, const GSetPtr& y) {
  check_same_group(*c.x, *y);
  auto xy = make_gset(product(*c.x, *y));
  std::vector<std::size_t> pi, tau;
  for (std::size_t p = 0; p < c.x->size(); ++p)
    for (std::size_t q = 0; q < y->size(); ++q) {
      pi.push_back(q);
      tau.push_back(y->act(c.marker[p], q));
    }
  return {xy, GMap(xy, y, std::move(pi)), GMap(xy, y, std::move(tau))};
}

/// η^c_Y = M_*(τ) M^*(π) on M(Y).
template <class T>
Matrix<T> eta(const CrossedGSetConcrete& c, const MackeyFunctor<T>& m, const GSetPtr& y) {
  m.check_group(*y);
  auto maps = eta_maps(c, y);
  return m.push(maps.tau) * m.pull(maps.pi);
}

/// Σ λ_i η^{(H_i, a_i)} for a crossed element Σ λ_i (H_i, a_i).
template <class T>
Matrix<T> crossed_to_endomorphism(const CrossedElement& x, const MackeyFunctor<T>& m, const GSetPtr& y) {
  const CrossedRing& ring = *x.ring();
  if (!same_group(ring.lattice().group_ptr(), m.group_ptr()))
    throw Error(ErrorCode::GroupMismatch, "crossed element and functor over different groups");
  const std::size_t d = m.dim(*y);
  Matrix<T> out(d, d);
  for (const auto& [i, c] : x.coeffs()) {
    const auto& p = ring.pair(i);
    auto conc = crossed_from_pair(ring.lattice().group_ptr(), ring.lattice().class_rep(p.cls), p.marker);
    out = out + coerce<T>(c) * eta(conc, m, y);
  }
  return out;
}

/// Stabilizer classes of the orbits of a G-set, as a sorted multiset.
inline std::vector<std::size_t> orbit_types(const GSet& x, const SubgroupLattice& lat) {
  std::vector<std::size_t> out;
  for (std::size_t rep : x.orbit_reps()) out.push_back(lat.class_of(x.stabilizer(rep)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace burnside
