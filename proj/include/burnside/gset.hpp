#pragma once

// Finite G-sets as action tables, equivariant maps, and the constructions the
// Mackey functors need: cosets, disjoint unions, products, pullbacks.

#include <memory>

#include "group.hpp"

namespace burnside {

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || *a == *b; }

class GSet {
 public:
  /// action[g * points + x] = g·x
  GSet(GroupPtr group, std::size_t points, std::vector<std::size_t> action)
      : group_(std::move(group)), points_(points), action_(std::move(action)) {
    const FiniteGroup& g = *group_;
    if (action_.size() != g.order() * points_)
      throw Error(ErrorCode::InvalidArgument, "action table has wrong size");
    for (auto v : action_)
      if (v >= points_) throw Error(ErrorCode::InvalidArgument, "action table entry out of range");
    for (std::size_t x = 0; x < points_; ++x)
      if (act(g.identity(), x) != x)
        throw Error(ErrorCode::InvalidArgument, "identity moves point " + std::to_string(x));
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b)
        for (std::size_t x = 0; x < points_; ++x)
          if (act(g.mul(a, b), x) != act(a, act(b, x)))
            throw Error(ErrorCode::InvalidArgument, "action is not compatible with multiplication at (" +
                                                        std::to_string(a) + "," + std::to_string(b) + "," +
                                                        std::to_string(x) + ")");
    // orbits, numbered by smallest point; a transversal element per point
    orbit_of_.assign(points_, points_);
    transversal_.assign(points_, g.identity());
    for (std::size_t x = 0; x < points_; ++x) {
      if (orbit_of_[x] != points_) continue;
      const std::size_t o = orbit_reps_.size();
      orbit_reps_.push_back(x);
      for (Elem a = 0; a < g.order(); ++a) {
        std::size_t y = act(a, x);
        if (orbit_of_[y] == points_) {
          orbit_of_[y] = o;
          transversal_[y] = a;
        }
      }
    }
  }

  static GSet empty(GroupPtr group) { return GSet(std::move(group), 0, {}); }

  /// G/H with points the left cosets, numbered by their smallest elements.
  static GSet cosets(GroupPtr group, const Subgroup& h) {
    const FiniteGroup& g = *group;
    auto reps = left_coset_reps(g, h);
    std::vector<std::size_t> point_of(g.order());
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (Elem e : h.elements()) point_of[g.mul(reps[i], e)] = i;
    std::vector<std::size_t> action(g.order() * reps.size());
    for (Elem a = 0; a < g.order(); ++a)
      for (std::size_t i = 0; i < reps.size(); ++i) action[a * reps.size() + i] = point_of[g.mul(a, reps[i])];
    return GSet(std::move(group), reps.size(), std::move(action));
  }

  const GroupPtr& group_ptr() const noexcept { return group_; }
  const FiniteGroup& group() const noexcept { return *group_; }
  std::size_t size() const noexcept { return points_; }
  std::size_t act(Elem g, std::size_t x) const { return action_[g * points_ + x]; }
  const std::vector<std::size_t>& action() const noexcept { return action_; }

  std::size_t orbit_count() const noexcept { return orbit_reps_.size(); }
  /// Smallest point of every orbit.
  const std::vector<std::size_t>& orbit_reps() const noexcept { return orbit_reps_; }
  std::size_t orbit_of(std::size_t x) const { return orbit_of_[x]; }
  /// t with t·(orbit representative) = x.
  Elem transversal(std::size_t x) const { return transversal_[x]; }

  std::vector<std::vector<std::size_t>> orbits() const {
    std::vector<std::vector<std::size_t>> out(orbit_reps_.size());
    for (std::size_t x = 0; x < points_; ++x) out[orbit_of_[x]].push_back(x);
    return out;
  }

  Subgroup stabilizer(std::size_t x) const {
    std::vector<Elem> s;
    for (Elem a = 0; a < group_->order(); ++a)
      if (act(a, x) == x) s.push_back(a);
    return Subgroup(group_->order(), std::move(s));
  }

  bool is_fixed(const Subgroup& h, std::size_t x) const {
    for (Elem e : h.elements())
      if (act(e, x) != x) return false;
    return true;
  }

 private:
  GroupPtr group_;
  std::size_t points_;
  std::vector<std::size_t> action_;
  std::vector<std::size_t> orbit_reps_;
  std::vector<std::size_t> orbit_of_;
  std::vector<Elem> transversal_;
};

using GSetPtr = std::shared_ptr<const GSet>;

inline GSetPtr make_gset(GSet x) { return std::make_shared<const GSet>(std::move(x)); }

inline void check_same_group(const GSet& x, const GSet& y) {
  if (!same_group(x.group_ptr(), y.group_ptr())) throw Error(ErrorCode::GroupMismatch, "G-sets over different groups");
}

/// X ⊔ Y with the points of Y shifted by |X|.
inline GSet disjoint_union(const GSet& x, const GSet& y) {
  check_same_group(x, y);
  const std::size_t n = x.size() + y.size();
  std::vector<std::size_t> action(x.group().order() * n);
  for (Elem g = 0; g < x.group().order(); ++g) {
    for (std::size_t p = 0; p < x.size(); ++p) action[g * n + p] = x.act(g, p);
    for (std::size_t p = 0; p < y.size(); ++p) action[g * n + x.size() + p] = x.size() + y.act(g, p);
  }
  return GSet(x.group_ptr(), n, std::move(action));
}

/// X × Y with the diagonal action; (x, y) at index x·|Y| + y.
inline GSet product(const GSet& x, const GSet& y) {
  check_same_group(x, y);
  const std::size_t n = x.size() * y.size();
  std::vector<std::size_t> action(x.group().order() * n);
  for (Elem g = 0; g < x.group().order(); ++g)
    for (std::size_t p = 0; p < x.size(); ++p)
      for (std::size_t q = 0; q < y.size(); ++q) action[g * n + p * y.size() + q] = x.act(g, p) * y.size() + y.act(g, q);
  return GSet(x.group_ptr(), n, std::move(action));
}

/// An equivariant map of G-sets.
class GMap {
 public:
  GMap(GSetPtr source, GSetPtr target, std::vector<std::size_t> values)
      : source_(std::move(source)), target_(std::move(target)), values_(std::move(values)) {
    check_same_group(*source_, *target_);
    if (values_.size() != source_->size()) throw Error(ErrorCode::InvalidArgument, "map has wrong length");
    for (auto v : values_)
      if (v >= target_->size()) throw Error(ErrorCode::InvalidArgument, "map value out of range");
    for (Elem g = 0; g < source_->group().order(); ++g)
      for (std::size_t x = 0; x < source_->size(); ++x)
        if (values_[source_->act(g, x)] != target_->act(g, values_[x]))
          throw Error(ErrorCode::NotEquivariant,
                      "f(g·x) != g·f(x) at g=" + std::to_string(g) + ", x=" + std::to_string(x));
  }

  static GMap identity(const GSetPtr& x) {
    std::vector<std::size_t> v(x->size());
    std::iota(v.begin(), v.end(), std::size_t{0});
    return GMap(x, x, std::move(v));
  }

  const GSetPtr& source() const noexcept { return source_; }
  const GSetPtr& target() const noexcept { return target_; }
  const std::vector<std::size_t>& values() const noexcept { return values_; }
  std::size_t operator()(std::size_t x) const { return values_[x]; }

 private:
  GSetPtr source_;
  GSetPtr target_;
  std::vector<std::size_t> values_;
};

/// g∘f
inline GMap compose(const GMap& g, const GMap& f) {
  if (f.target() != g.source() && !(f.target()->action() == g.source()->action()))
    throw Error(ErrorCode::TargetMismatch, "maps do not compose");
  std::vector<std::size_t> v(f.source()->size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = g(f(x));
  return GMap(f.source(), g.target(), std::move(v));
}

struct Coproduct {
  GSetPtr sum;
  GMap left;   // X -> X ⊔ Y
  GMap right;  // Y -> X ⊔ Y
};

inline Coproduct coproduct(const GSetPtr& x, const GSetPtr& y) {
  auto s = make_gset(disjoint_union(*x, *y));
  std::vector<std::size_t> l(x->size()), r(y->size());
  std::iota(l.begin(), l.end(), std::size_t{0});
  std::iota(r.begin(), r.end(), x->size());
  return {s, GMap(x, s, std::move(l)), GMap(y, s, std::move(r))};
}

struct Pullback {
  GSetPtr w;
  GMap to_x;  // (x, y) ↦ x
  GMap to_y;  // (x, y) ↦ y
};

/// W = {(x, y) : f(x) = h(y)} with the diagonal action, points in
/// lexicographic order of (x, y).
inline Pullback pullback(const GMap& f, const GMap& h) {
  check_same_group(*f.source(), *h.source());
  if (f.target() != h.target() && !(f.target()->action() == h.target()->action()))
    throw Error(ErrorCode::TargetMismatch, "pullback of maps with different targets");
  const GSet& x = *f.source();
  const GSet& y = *h.source();
  std::vector<std::pair<std::size_t, std::size_t>> pts;
  std::vector<std::size_t> index(x.size() * y.size(), 0);
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      if (f(a) == h(b)) {
        index[a * y.size() + b] = pts.size();
        pts.emplace_back(a, b);
      }
  const FiniteGroup& g = x.group();
  std::vector<std::size_t> action(g.order() * pts.size());
  for (Elem e = 0; e < g.order(); ++e)
    for (std::size_t i = 0; i < pts.size(); ++i)
      action[e * pts.size() + i] = index[x.act(e, pts[i].first) * y.size() + y.act(e, pts[i].second)];
  auto w = make_gset(GSet(x.group_ptr(), pts.size(), std::move(action)));
  std::vector<std::size_t> px, py;
  for (auto [a, b] : pts) {
    px.push_back(a);
    py.push_back(b);
  }
  return {w, GMap(w, f.source(), std::move(px)), GMap(w, h.source(), std::move(py))};
}

/// G/H -> Z, gH ↦ g·z; needs H to fix z.
inline GMap coset_map(const GSetPtr& cosets_of_h, const Subgroup& h, const GSetPtr& z, std::size_t point) {
  const FiniteGroup& g = z->group();
  if (!z->is_fixed(h, point))
    throw Error(ErrorCode::NotEquivariant, "subgroup does not fix point " + std::to_string(point));
  auto reps = left_coset_reps(g, h);
  if (reps.size() != cosets_of_h->size()) throw Error(ErrorCode::InvalidArgument, "not the coset space of H");
  std::vector<std::size_t> v;
  for (Elem r : reps) v.push_back(z->act(r, point));
  return GMap(cosets_of_h, z, std::move(v));
}

}  // namespace burnside
