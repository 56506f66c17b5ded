#pragma once

#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "group.hpp"

namespace burnside {

/// All subgroups of a finite group, grouped into conjugacy classes.
///
/// Classes are ordered by subgroup order, then by canonical representative;
/// the canonical representative of a class is the conjugate whose sorted element
/// list is lexicographically smallest. Subgroups are numbered class by class,
/// each class starting with its representative, the remaining members in
/// lexicographic order.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(std::shared_ptr<const FiniteGroup> group,
                           std::size_t cap = kDefaultLatticeCap)
      : group_(std::move(group)) {
    const FiniteGroup& g = *group_;
    if (g.order() > cap)
      throw Error(ErrorCode::CapExceeded, "subgroup lattice of a group of order " +
                                              std::to_string(g.order()) + " (cap " +
                                              std::to_string(cap) + ")");
    build();
  }

  const FiniteGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const FiniteGroup>& group_ptr() const noexcept { return group_; }

  std::size_t class_count() const noexcept { return class_start_.size() - 1; }
  std::size_t subgroup_count() const noexcept { return subgroups_.size(); }

  const Subgroup& subgroup(std::size_t i) const { return subgroups_[i]; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  std::size_t representative(std::size_t cls) const { return class_start_[cls]; }
  const Subgroup& class_rep(std::size_t cls) const { return subgroups_[class_start_[cls]]; }
  std::size_t class_size(std::size_t cls) const {
    return class_start_[cls + 1] - class_start_[cls];
  }
  /// Subgroup indices of the members of a class.
  std::pair<std::size_t, std::size_t> class_range(std::size_t cls) const {
    return {class_start_[cls], class_start_[cls + 1]};
  }
  std::size_t normalizer_order(std::size_t cls) const { return group_->order() / class_size(cls); }
  bool is_normal(std::size_t cls) const { return class_size(cls) == 1; }
  const Subgroup& normalizer(std::size_t cls) const { return normalizers_[cls]; }

  /// t with t S_i t^-1 equal to the representative of S_i's class.
  Elem conjugator(std::size_t i) const { return conjugator_[i]; }

  std::optional<std::size_t> find(const Subgroup& h) const {
    auto it = index_.find(h.bits());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Subgroup& h) const {
    auto i = find(h);
    if (!i) throw Error(ErrorCode::NotASubgroup, "{" + h.id() + "} is not in the lattice");
    return *i;
  }

  std::size_t class_of(const Subgroup& h) const { return class_of_[index_of(h)]; }

  /// S_small ≤ S_big
  bool contains(std::size_t big, std::size_t small) const {
    return subgroups_[small].is_subset_of(subgroups_[big]);
  }

  /// Indices of every subgroup of S_i, S_i included, by decreasing order.
  const std::vector<std::size_t>& subgroups_of(std::size_t i) const { return below_[i]; }

  /// μ(K, H) for every K ≤ H in the full subgroup poset (zero elsewhere).
  std::vector<long long> mobius_column(std::size_t h) const {
    std::vector<long long> mu(subgroups_.size(), 0);
    const auto& below = below_[h];  // decreasing order, below[0] == h
    mu[h] = 1;
    for (std::size_t a = 1; a < below.size(); ++a) {
      std::size_t l = below[a];
      long long sum = 0;
      for (std::size_t b = 0; b < a; ++b) {
        std::size_t m = below[b];
        if (subgroups_[m].size() > subgroups_[l].size() && contains(m, l)) sum += mu[m];
      }
      mu[l] = -sum;
    }
    return mu;
  }

  long long mobius(std::size_t k, std::size_t h) const {
    if (!contains(h, k))
      throw Error(ErrorCode::NotContained, "{" + subgroups_[k].id() + "} is not contained in {" +
                                               subgroups_[h].id() + "}");
    return mobius_column(h)[k];
  }

  /// Canonical id of a class: hyphen-joined elements of its representative.
  std::string class_id(std::size_t cls) const { return class_rep(cls).id(); }

  std::optional<std::size_t> class_by_id(std::string_view id) const {
    for (std::size_t c = 0; c < class_count(); ++c)
      if (class_id(c) == id) return c;
    return std::nullopt;
  }

 private:
  struct ClassData {
    std::vector<std::pair<Subgroup, Elem>> members;  // (subgroup, conjugator to rep)
    std::vector<Elem> generators;                    // of the representative
  };

  // Conjugacy class of h: the minimal conjugate and, for every member, an element
  // conjugating it onto that minimum.
  ClassData conjugacy_class(const Subgroup& h, const std::vector<Elem>& gens) const {
    const FiniteGroup& g = *group_;
    Subgroup best = h;
    Elem best_x = g.identity();
    std::unordered_set<std::vector<std::uint64_t>, BitsHash> seen;
    for (Elem x = 0; x < g.order(); ++x) {
      Subgroup c = conjugate(g, h, x);
      if (!seen.insert(c.bits()).second) continue;
      if (c < best) {
        best = c;
        best_x = x;
      }
    }
    ClassData data;
    for (Elem s : gens) data.generators.push_back(g.conj(best_x, s));
    seen.clear();
    for (Elem x = 0; x < g.order(); ++x) {
      Subgroup c = conjugate(g, best, x);
      if (seen.insert(c.bits()).second) data.members.emplace_back(std::move(c), g.inv(x));
    }
    return data;
  }

  void build() {
    const FiniteGroup& g = *group_;

    // one generator per cyclic subgroup
    std::vector<Elem> cyclic_gens;
    {
      std::unordered_set<std::vector<std::uint64_t>, BitsHash> seen;
      for (Elem x = 0; x < g.order(); ++x) {
        if (x == g.identity()) continue;
        if (seen.insert(generate(g, {x}).bits()).second) cyclic_gens.push_back(x);
      }
    }

    // Layered extension of class representatives by cyclic generators: every
    // subgroup is generated by finitely many cyclic subgroups, and extending one
    // representative per class suffices up to conjugacy.
    std::vector<ClassData> classes;
    std::unordered_set<std::vector<std::uint64_t>, BitsHash> known;
    auto add_class = [&](const Subgroup& h, const std::vector<Elem>& gens) {
      ClassData data = conjugacy_class(h, gens);
      for (auto& [m, t] : data.members) known.insert(m.bits());
      classes.push_back(std::move(data));
    };
    add_class(trivial_subgroup(g), {});
    for (std::size_t next = 0; next < classes.size(); ++next) {
      const Subgroup rep = classes[next].members.front().first;
      const std::vector<Elem> rep_gens = classes[next].generators;
      for (Elem c : cyclic_gens) {
        if (rep.contains(c)) continue;
        std::vector<Elem> gens = rep_gens;
        gens.push_back(c);
        Subgroup k = generate(g, std::span<const Elem>(gens));
        if (known.contains(k.bits())) continue;
        add_class(k, gens);
      }
    }

    for (auto& cls : classes)
      std::sort(cls.members.begin(), cls.members.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    std::sort(classes.begin(), classes.end(), [](const ClassData& a, const ClassData& b) {
      const Subgroup& x = a.members.front().first;
      const Subgroup& y = b.members.front().first;
      if (x.size() != y.size()) return x.size() < y.size();
      return x < y;
    });

    class_start_.push_back(0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (auto& [m, t] : classes[c].members) {
        index_.emplace(m.bits(), subgroups_.size());
        subgroups_.push_back(std::move(m));
        conjugator_.push_back(t);
        class_of_.push_back(c);
      }
      class_start_.push_back(subgroups_.size());
    }
    for (std::size_t c = 0; c < class_count(); ++c) normalizers_.push_back(burnside::normalizer(g, class_rep(c)));

    below_.resize(subgroups_.size());
    std::vector<std::size_t> by_size(subgroups_.size());
    std::iota(by_size.begin(), by_size.end(), std::size_t{0});
    std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
      return subgroups_[a].size() > subgroups_[b].size();
    });
    for (std::size_t i = 0; i < subgroups_.size(); ++i) {
      below_[i].push_back(i);
      for (std::size_t j : by_size) {
        if (j == i || subgroups_[i].size() % subgroups_[j].size() != 0) continue;
        if (subgroups_[j].size() == subgroups_[i].size()) continue;
        if (contains(i, j)) below_[i].push_back(j);
      }
    }
  }

  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::size_t> class_of_;
  std::vector<Elem> conjugator_;
  std::vector<std::size_t> class_start_;
  std::vector<Subgroup> normalizers_;
  std::vector<std::vector<std::size_t>> below_;
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, BitsHash> index_;
};

}  // namespace burnside
