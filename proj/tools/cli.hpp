#pragma once

// The burnside command line. Kept in a header so tests can drive it
// in-process; tools/main.cpp is a thin wrapper.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "burnside.hpp"

namespace burnside::cli {

enum class Format { Text, Json, Csv };

struct Options {
  Format format = Format::Text;
  bool oracle = false;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultLatticeCap;

  std::string group;
  std::vector<std::string> operands;
  bool integral = false;

  // tower
  std::string tower;
  std::string tower_action;
  std::string subgroup;

  // mackey
  std::string functor = "burnside";
  std::string rep = "regular";
  std::string field = "Q";
  std::vector<std::string> y_specs;
  std::string element;
  bool check = false;
  std::size_t samples = 100;

  // hall
  int p = 3;
  int n = 2;
  std::string word;
};

// ---------------------------------------------------------------------------
// Shared helpers

inline std::string read_argument(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return arg;
  std::string path = !arg.empty() && arg[0] == '@' ? arg.substr(1) : arg;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline BurnsideRingPtr make_ring(const Options& o) { return BurnsideRing::create(builtin(o.group, std::max(o.cap, kDefaultElementCap)), o.cap); }

/// "one", "class:<id>" or element JSON (inline or a file).
inline BurnsideElement read_element(const std::string& arg, const BurnsideRingPtr& ring) {
  if (arg == "one") return BurnsideElement::one(ring);
  if (arg.starts_with("class:")) {
    auto cls = ring->lattice().class_by_id(arg.substr(6));
    if (!cls) throw Error(ErrorCode::ParseError, "unknown class id '" + arg.substr(6) + "'");
    return BurnsideElement::basis(ring, *cls);
  }
  return burnside_element_from_json(parse_json(read_argument(arg)), ring);
}

/// "one", "pair:<id>:<a>" or crossed element JSON.
inline CrossedElement read_crossed(const std::string& arg, const CrossedRingPtr& ring) {
  if (arg == "one") return CrossedElement::one(ring);
  if (arg.starts_with("pair:")) {
    auto colon = arg.rfind(':');
    std::string id = arg.substr(5, colon - 5);
    auto cls = ring->lattice().class_by_id(id);
    if (!cls || colon <= 4) throw Error(ErrorCode::ParseError, "bad pair '" + arg + "'");
    Elem a = static_cast<Elem>(detail::parse_size(arg.substr(colon + 1), "marker"));
    if (a >= ring->group().order()) throw Error(ErrorCode::ParseError, "marker out of range");
    return CrossedElement::basis(ring, ring->canonical_index(ring->lattice().representative(*cls), a));
  }
  return crossed_element_from_json(parse_json(read_argument(arg)), ring);
}

inline void require_format(const Options& o, std::initializer_list<Format> allowed) {
  for (auto f : allowed)
    if (f == o.format) return;
  throw Error(ErrorCode::InvalidArgument, "output format not available for this command");
}

// ---------------------------------------------------------------------------
// Verbs

inline std::string run_tom(const Options& o, bool) {
  auto ring = make_ring(o);
  if (o.format == Format::Csv) return table_of_marks_csv(*ring);
  if (o.format == Format::Json) return dump(table_of_marks_json(*ring));
  const auto& tom = ring->table_of_marks();
  std::ostringstream s;
  s << ring->group().label() << ": " << tom.size() << " subgroup classes, " << ring->lattice().subgroup_count()
    << " subgroups\n";
  for (std::size_t k = 0; k < tom.size(); ++k) {
    s << "[" << ring->lattice().class_id(k) << "]";
    for (std::size_t h = 0; h <= k; ++h) s << " " << tom.mark(h, k);
    s << "\n";
  }
  return s.str();
}

/// The primitive idempotents among a full census, labelled by their first
/// class with mark 1.
inline std::vector<IntegralIdempotent> primitive_from_census(const BurnsideRingPtr& ring, std::size_t cap) {
  auto all = idempotent_census(ring, cap);
  std::vector<IntegralIdempotent> out;
  for (const auto& e : all) {
    if (e.is_zero()) continue;
    bool primitive = true;
    for (const auto& f : all)
      if (!f.is_zero() && !(f == e) && multiply(f, e, MultiplyPath::DoubleCoset) == f) primitive = false;
    if (!primitive) continue;
    auto m = marks(e);
    std::size_t first = 0;
    while (m.marks[first] == 0) ++first;
    out.push_back({first, first == 0 ? std::string("1") : ring->lattice().class_id(first), e});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.perfect_class < b.perfect_class; });
  return out;
}

inline std::string run_idem(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  auto ring = make_ring(o);
  std::vector<std::pair<std::string, BurnsideElement>> items;
  if (o.integral) {
    auto list = oracle ? primitive_from_census(ring, kDefaultCensusCap) : integral_idempotents(ring);
    for (auto& i : list) items.emplace_back(i.label, std::move(i.element));
  } else {
    for (std::size_t c = 0; c < ring->rank(); ++c)
      items.emplace_back(ring->lattice().class_id(c),
                         oracle ? from_marks(indicator(ring, {c})) : gluck_idempotent(ring, c));
  }
  if (o.format == Format::Json) {
    json arr = json::array();
    for (const auto& [label, e] : items) arr.push_back({{"label", label}, {"element", to_json(e)}});
    return dump({{"group", ring->group().label()}, {"kind", o.integral ? "integral" : "gluck"}, {"idempotents", arr}});
  }
  std::ostringstream s;
  for (const auto& [label, e] : items) s << (o.integral ? "f_" : "e_") << "[" << label << "] = " << to_text(e) << "\n";
  return s.str();
}

inline std::string run_mul(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  if (o.operands.size() < 2) throw Error(ErrorCode::InvalidArgument, "mul needs two elements");
  auto ring = make_ring(o);
  BurnsideElement r = read_element(o.operands[0], ring);
  for (std::size_t i = 1; i < o.operands.size(); ++i)
    r = multiply(r, read_element(o.operands[i], ring), oracle ? MultiplyPath::DoubleCoset : MultiplyPath::Marks);
  return o.format == Format::Json ? dump(to_json(r)) : to_text(r) + "\n";
}

/// Canonical crossed basis found by brute force: orbits of simultaneous
/// conjugation on all pairs (S, a), S any subgroup and a ∈ C_G(S).
inline std::vector<CrossedPair> crossed_basis_exhaustive(const CrossedRing& ring) {
  const FiniteGroup& g = ring.group();
  const auto& lat = ring.lattice();
  std::set<std::pair<std::size_t, Elem>> seen;
  std::vector<CrossedPair> out;
  for (std::size_t s = 0; s < lat.subgroup_count(); ++s) {
    Subgroup c = centralizer(g, lat.subgroup(s));
    for (Elem a : c.elements()) {
      if (seen.contains({s, a})) continue;
      CrossedPair best{lat.class_count(), 0};
      for (Elem x = 0; x < g.order(); ++x) {
        std::size_t t = lat.index_of(conjugate(g, lat.subgroup(s), x));
        Elem b = g.conj(x, a);
        seen.insert({t, b});
        if (t == lat.representative(lat.class_of(t))) best = std::min(best, CrossedPair{lat.class_of(t), b});
      }
      out.push_back(best);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string run_crossed_basis(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  auto ring = CrossedRing::create(make_ring(o));
  std::vector<CrossedPair> basis = oracle ? crossed_basis_exhaustive(*ring) : ring->basis();
  if (o.format == Format::Json) {
    json arr = json::array();
    for (const auto& p : basis) arr.push_back({{"H", ring->lattice().class_id(p.cls)}, {"a", p.marker}});
    return dump({{"group", ring->group().label()}, {"rank", basis.size()}, {"basis", arr}});
  }
  std::ostringstream s;
  s << "rank " << basis.size() << "\n";
  for (const auto& p : basis) s << "(" << ring->lattice().class_id(p.cls) << "; " << p.marker << ")\n";
  return s.str();
}

inline std::string run_crossed_mul(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  if (o.operands.size() < 2) throw Error(ErrorCode::InvalidArgument, "crossed-mul needs two elements");
  auto ring = CrossedRing::create(make_ring(o));
  CrossedElement r = read_crossed(o.operands[0], ring);
  for (std::size_t i = 1; i < o.operands.size(); ++i)
    r = crossed_multiply(r, read_crossed(o.operands[i], ring),
                         oracle ? DoubleCosetChoice::Largest : DoubleCosetChoice::Smallest);
  return o.format == Format::Json ? dump(to_json(r)) : to_text(r) + "\n";
}

/// z_U by summing markers over the U-fixed points of the concrete crossed
/// G-set of each basis pair.
inline Zeta zeta_concrete(const CrossedElement& x) {
  if (!x.is_integral()) throw Error(ErrorCode::NonIntegerCoefficients, "ζ is defined on integral elements");
  const CrossedRing& ring = *x.ring();
  const auto& lat = ring.lattice();
  Zeta z{x.ring(), std::vector<GroupAlgebraElement>(lat.class_count())};
  for (const auto& [i, c] : x.coeffs()) {
    const auto& p = ring.pair(i);
    auto conc = crossed_from_pair(lat.group_ptr(), lat.class_rep(p.cls), p.marker);
    for (std::size_t u = 0; u < lat.class_count(); ++u)
      for (std::size_t q = 0; q < conc.x->size(); ++q)
        if (conc.x->is_fixed(lat.class_rep(u), q)) z.components[u][conc.marker[q]] += numerator(c);
  }
  for (auto& comp : z.components) std::erase_if(comp, [](const auto& kv) { return kv.second == 0; });
  return z;
}

inline std::string run_zeta(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  auto ring = CrossedRing::create(make_ring(o));
  if (o.operands.empty()) {
    // rank report; the oracle recomputes the matrix column by column from concrete sets
    std::size_t r;
    if (!oracle) {
      r = zeta_rank(ring);
    } else {
      std::vector<std::pair<std::size_t, Elem>> rows;
      for (std::size_t u = 0; u < ring->lattice().class_count(); ++u)
        for (Elem c : ring->centralizer_of_class(u).elements()) rows.emplace_back(u, c);
      Matrix<Rational> m(rows.size(), ring->rank());
      for (std::size_t j = 0; j < ring->rank(); ++j) {
        Zeta z = zeta_concrete(CrossedElement::basis(ring, j));
        for (std::size_t k = 0; k < rows.size(); ++k) {
          auto it = z.components[rows[k].first].find(rows[k].second);
          if (it != z.components[rows[k].first].end()) m(k, j) = Rational(it->second);
        }
      }
      r = rank(m);
    }
    if (o.format == Format::Json)
      return dump({{"group", ring->group().label()}, {"crossed_rank", ring->rank()}, {"zeta_rank", r},
                   {"injective", r == ring->rank()}});
    return "crossed rank " + std::to_string(ring->rank()) + ", zeta rank " + std::to_string(r) +
           (r == ring->rank() ? ", injective\n" : ", not injective\n");
  }
  CrossedElement x = read_crossed(o.operands[0], ring);
  Zeta z = oracle ? zeta_concrete(x) : zeta(x);
  if (!zeta_is_central(z)) throw Error(ErrorCode::InvariantViolation, "ζ component is not central");
  if (o.format == Format::Json) return dump(to_json(z));
  std::ostringstream s;
  for (std::size_t u = 0; u < z.components.size(); ++u) {
    s << "z[" << ring->lattice().class_id(u) << "] =";
    if (z.components[u].empty()) s << " 0";
    for (const auto& [g, c] : z.components[u]) s << " " << to_string(c) << "*g" << g;
    s << "\n";
  }
  return s.str();
}

// ---------------------------------------------------------------------------
// tower

inline std::string run_tower(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  auto t = tower_build(o.tower, o.cap);
  const std::string& act = o.tower_action;
  if (act == "info") {
    json levels = json::array();
    std::ostringstream s;
    s << t->spec() << ": depth " << t->depth() << "\n";
    for (std::size_t i = 0; i < t->depth(); ++i) {
      const auto& r = t->level(i);
      std::size_t kernel = i + 1 < t->depth() ? t->map(i).kernel().size() : 0;
      levels.push_back({{"level", i}, {"group", r->group().label()}, {"order", r->group().order()},
                        {"classes", r->rank()}, {"crossed_rank", t->crossed_level(i)->rank()},
                        {"kernel_above", kernel}});
      s << "level " << i << ": " << r->group().label() << ", order " << r->group().order() << ", " << r->rank()
        << " classes, crossed rank " << t->crossed_level(i)->rank() << "\n";
    }
    if (o.format == Format::Json) return dump({{"tower", t->spec()}, {"levels", levels}});
    return s.str();
  }
  if (act == "idem") {
    if (o.subgroup.empty()) throw Error(ErrorCode::InvalidArgument, "tower idem needs --subgroup");
    PlainFamily f = idempotent_family(t, o.subgroup);
    if (oracle) {
      // same family from the ghost side: indicator of the class of e_H at each level
      for (auto& x : f.levels) {
        if (x.is_zero()) continue;
        auto m = marks(x);
        std::vector<std::size_t> support;
        for (std::size_t c = 0; c < m.marks.size(); ++c)
          if (m.marks[c] != 0) support.push_back(c);
        x = from_marks(indicator(x.ring(), support));
      }
    }
    auto first_bad = f.first_incompatible_level();
    json closed = json::array();
    std::ostringstream s;
    s << t->spec() << " " << o.subgroup << ": " << (first_bad ? "incompatible at level " + std::to_string(*first_bad) : "compatible") << "\n";
    std::optional<std::size_t> n_exp;
    if (t->kind() == TowerKind::Zp && o.subgroup.starts_with("index:")) {
      std::size_t idx = detail::parse_index(o.subgroup.substr(6), t->prime()), e = 0;
      while (idx > 1 && idx % static_cast<std::size_t>(t->prime()) == 0) {
        idx /= static_cast<std::size_t>(t->prime());
        ++e;
      }
      if (idx == 1) n_exp = e;
    }
    for (std::size_t i = 0; i < f.levels.size(); ++i) {
      s << "level " << i << ": " << to_text(f.levels[i]);
      if (n_exp && i >= *n_exp) {
        bool match = f.levels[i] == zp_closed_form(t->level(i), t->prime(), *n_exp);
        s << (match ? "  [closed form]" : "  [closed form MISMATCH]");
        closed.push_back({{"level", i}, {"matches", match}});
      }
      s << "\n";
    }
    if (o.format == Format::Json) {
      json j = to_json(f);
      j["compatible"] = !first_bad.has_value();
      if (n_exp) j["closed_form"] = closed;
      return dump(j);
    }
    return s.str();
  }
  if (act == "census") {
    CensusReport rep = prosoluble_census(t);
    if (oracle) {
      // exhaustive top-level census in place of the Dress Boolean algebra;
      // past the census cap, ghost indicators of unions of perfect-core fibres
      const auto& top = t->level(t->depth() - 1);
      std::vector<BurnsideElement> all;
      if (top->rank() <= kDefaultCensusCap) {
        all = idempotent_census(top, kDefaultCensusCap);
      } else {
        auto cores = perfect_core_classes(*top);
        std::vector<std::size_t> perfect;
        for (std::size_t c = 0; c < cores.size(); ++c)
          if (cores[c] == c) perfect.push_back(c);
        if (perfect.size() > 20) throw Error(ErrorCode::CapExceeded, "too many perfect classes for the oracle");
        for (std::size_t mask = 0; mask < (std::size_t{1} << perfect.size()); ++mask) {
          std::vector<std::size_t> support;
          for (std::size_t c = 0; c < cores.size(); ++c)
            for (std::size_t b = 0; b < perfect.size(); ++b)
              if ((mask >> b & 1) && cores[c] == perfect[b]) support.push_back(c);
          BurnsideElement e = from_marks(indicator(top, support));
          if (!e.is_integral()) throw Error(ErrorCode::InvariantViolation, "perfect-core indicator is not integral");
          all.push_back(std::move(e));
        }
      }
      rep.families.clear();
      for (const auto& e : all) rep.families.push_back(family_from_top(t, e));
      rep.coherent_family_count = all.size();
      rep.nontrivial_family = all.size() > 2;
      std::sort(rep.families.begin(), rep.families.end(), [](const PlainFamily& a, const PlainFamily& b) {
        return to_json(a.levels.back()).dump() < to_json(b.levels.back()).dump();
      });
    } else {
      std::sort(rep.families.begin(), rep.families.end(), [](const PlainFamily& a, const PlainFamily& b) {
        return to_json(a.levels.back()).dump() < to_json(b.levels.back()).dump();
      });
    }
    json levels = json::array();
    std::ostringstream s;
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      const auto& l = rep.levels[i];
      levels.push_back({{"level", i}, {"order", l.order}, {"classes", l.classes}, {"soluble", l.soluble},
                        {"idempotents", l.idempotent_count}});
      s << "level " << i << ": order " << l.order << ", " << l.classes << " classes, "
        << (l.soluble ? "soluble" : "not soluble") << ", " << l.idempotent_count << " idempotents\n";
    }
    s << "coherent idempotent families: " << rep.coherent_family_count
      << (rep.nontrivial_family ? " (nontrivial family exists)" : " (only 0 and 1)") << "\n";
    json fams = json::array();
    for (const auto& f : rep.families) {
      fams.push_back(to_json(f));
      s << "  top: " << to_text(f.levels.back()) << "\n";
    }
    if (o.format == Format::Json)
      return dump({{"tower", t->spec()}, {"levels", levels}, {"coherent_families", rep.coherent_family_count},
                   {"nontrivial", rep.nontrivial_family}, {"families", fams}});
    return s.str();
  }
  if (act == "check" || act == "markers") {
    if (o.operands.empty()) throw Error(ErrorCode::InvalidArgument, "tower " + act + " needs a family JSON");
    json j = parse_json(read_argument(o.operands[0]));
    std::string flavor = j.at("flavor").get<std::string>();
    if (act == "markers") {
      CrossedFamily f = crossed_family_from_json(j, t);
      auto chains = crossed_family_marker_recovery(f);
      std::ostringstream s;
      json arr = json::array();
      for (const auto& ch : chains) {
        const auto& p = t->crossed_level(t->depth() - 1)->pair(ch.top_index);
        s << "(" << t->level(t->depth() - 1)->lattice().class_id(p.cls) << "; " << p.marker << "):";
        json lv = json::array();
        for (std::size_t i = 0; i < t->depth(); ++i)
          if (ch.pairs[i]) {
            s << " L" << i << "=" << ch.pairs[i]->marker << "N";
            lv.push_back({{"level", i}, {"marker", ch.pairs[i]->marker}, {"coset_size", ch.cosets[i].size()}});
          }
        s << "\n";
        arr.push_back({{"H", t->level(t->depth() - 1)->lattice().class_id(p.cls)}, {"a", p.marker}, {"chain", lv}});
      }
      if (o.format == Format::Json) return dump({{"tower", t->spec()}, {"coherent", true}, {"chains", arr}});
      return s.str() + "coherent\n";
    }
    std::optional<std::size_t> bad = flavor == "crossed" ? crossed_family_from_json(j, t).first_incompatible_level()
                                                         : plain_family_from_json(j, t).first_incompatible_level();
    if (bad) throw Error(ErrorCode::InvalidArgument, "family is incompatible at level " + std::to_string(*bad));
    if (o.format == Format::Json) return dump({{"tower", t->spec()}, {"compatible", true}});
    return "compatible\n";
  }
  throw Error(ErrorCode::InvalidArgument, "unknown tower action '" + act + "'");
}

// ---------------------------------------------------------------------------
// mackey

/// "cosets:<id>" joined with '+', or a G-set JSON.
inline GSetPtr read_gset(const std::string& spec, const BurnsideRingPtr& ring) {
  const auto& lat = ring->lattice();
  if (spec.starts_with("cosets:")) {
    std::optional<GSet> acc;
    std::size_t start = 0;
    while (start < spec.size()) {
      std::size_t plus = spec.find('+', start);
      std::string part = spec.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      if (!part.starts_with("cosets:")) throw Error(ErrorCode::ParseError, "bad G-set term '" + part + "'");
      auto cls = lat.class_by_id(part.substr(7));
      if (!cls) throw Error(ErrorCode::ParseError, "unknown class id '" + part.substr(7) + "'");
      GSet g = GSet::cosets(lat.group_ptr(), lat.class_rep(*cls));
      acc = acc ? disjoint_union(*acc, g) : g;
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    return make_gset(std::move(*acc));
  }
  return make_gset(gset_from_json(parse_json(read_argument(spec)), lat.group_ptr()));
}

/// Burnside pull computed through the explicit pullback X ×_Z G/H.
template <class T>
Matrix<T> burnside_pull_via_pullback(const BurnsideMackey<T>& m, const GMap& f) {
  const auto& lat = m.lattice();
  auto bx = m.basis(*f.source()), bz = m.basis(*f.target());
  Matrix<T> out(bx.spans.size(), bz.spans.size());
  for (std::size_t j = 0; j < bz.spans.size(); ++j) {
    auto [c, z] = bz.spans[j];
    const Subgroup& h = lat.class_rep(c);
    auto gh = make_gset(GSet::cosets(lat.group_ptr(), h));
    auto span = coset_map(gh, h, f.target(), z);
    auto pb = pullback(f, span);
    for (std::size_t rep : pb.w->orbit_reps())
      out(m.canonical(bx, *f.source(), pb.w->stabilizer(rep), pb.to_x(rep)), j) += T(1);
  }
  return out;
}

template <class T>
class OracleBurnside final : public MackeyFunctor<T> {
 public:
  explicit OracleBurnside(const BurnsideMackey<T>& inner) : inner_(inner) {}
  std::string name() const override { return inner_.name(); }
  const GroupPtr& group_ptr() const override { return inner_.group_ptr(); }
  std::size_t dim(const GSet& x) const override { return inner_.dim(x); }
  Matrix<T> push(const GMap& f) const override { return inner_.push(f); }
  Matrix<T> pull(const GMap& f) const override { return burnside_pull_via_pullback(inner_, f); }

 private:
  const BurnsideMackey<T>& inner_;
};

template <class T>
Representation<T> make_representation(const std::string& name, const BurnsideRingPtr& ring) {
  const auto& g = ring->lattice().group_ptr();
  if (name == "regular") return regular_representation<T>(g);
  if (name == "trivial") return trivial_representation<T>(g);
  if (name.starts_with("perm:")) {
    auto cls = ring->lattice().class_by_id(name.substr(5));
    if (!cls) throw Error(ErrorCode::ParseError, "unknown class id '" + name.substr(5) + "'");
    return permutation_representation<T>(GSet::cosets(g, ring->lattice().class_rep(*cls)));
  }
  if (name.starts_with("sign:")) {
    auto cls = ring->lattice().class_by_id(name.substr(5));
    if (!cls) throw Error(ErrorCode::ParseError, "unknown class id '" + name.substr(5) + "'");
    return sign_representation<T>(g, ring->lattice().class_rep(*cls));
  }
  throw Error(ErrorCode::ParseError, "unknown representation '" + name + "'");
}

/// Random G-map into z: a disjoint union of one or two G/H -> z.
inline GMap random_map_into(const GSetPtr& z, const SubgroupLattice& lat, std::mt19937_64& rng) {
  std::optional<GMap> acc;
  const std::size_t parts = 1 + rng() % 2;
  for (std::size_t k = 0; k < parts; ++k) {
    std::size_t point = rng() % z->size();
    Subgroup stab = z->stabilizer(point);
    std::vector<std::size_t> inside;
    for (std::size_t s = 0; s < lat.subgroup_count(); ++s)
      if (lat.subgroup(s).is_subset_of(stab)) inside.push_back(s);
    const Subgroup& h = lat.subgroup(inside[rng() % inside.size()]);
    auto gh = make_gset(GSet::cosets(lat.group_ptr(), h));
    GMap m = coset_map(gh, h, z, point);
    if (!acc) {
      acc = m;
    } else {
      auto cp = coproduct(acc->source(), m.source());
      std::vector<std::size_t> v = acc->values();
      v.insert(v.end(), m.values().begin(), m.values().end());
      acc = GMap(cp.sum, z, std::move(v));
    }
  }
  return *acc;
}

struct AxiomReport {
  std::size_t mf2 = 0, mf2_ok = 0, mf3 = 0, mf3_ok = 0;
};

template <class T>
AxiomReport check_axioms(const MackeyFunctor<T>& m, const SubgroupLattice& lat, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AxiomReport rep;
  const auto& g = lat.group_ptr();
  auto random_transitive = [&] {
    std::size_t s = rng() % lat.subgroup_count();
    return make_gset(GSet::cosets(g, lat.subgroup(s)));
  };
  for (std::size_t i = 0; i < samples; ++i) {
    // MF2 on X ⊔ Y
    auto x = random_transitive(), y = random_transitive();
    auto cp = coproduct(x, y);
    auto px = m.pull(cp.left), py = m.pull(cp.right), sx = m.push(cp.left), sy = m.push(cp.right);
    const std::size_t dx = m.dim(*x), dy = m.dim(*y), ds = m.dim(*cp.sum);
    bool ok = dx + dy == ds && px * sx == Matrix<T>::identity(dx) && py * sy == Matrix<T>::identity(dy) &&
              (py * sx).is_zero_matrix() && (px * sy).is_zero_matrix() &&
              sx * px + sy * py == Matrix<T>::identity(ds);
    ++rep.mf2;
    rep.mf2_ok += ok;
    // MF3 on a random pullback square over a random Z
    GSetPtr z = rng() % 3 == 0 ? make_gset(disjoint_union(*random_transitive(), *random_transitive())) : random_transitive();
    GMap f = random_map_into(z, lat, rng);
    GMap h = random_map_into(z, lat, rng);
    auto pb = pullback(f, h);
    ++rep.mf3;
    rep.mf3_ok += m.pull(h) * m.push(f) == m.push(pb.to_y) * m.pull(pb.to_x);
  }
  return rep;
}

template <class T>
std::string run_mackey_field(const Options& o, bool oracle) {
  auto ring = make_ring(o);
  const auto& lat = ring->lattice();
  std::unique_ptr<MackeyFunctor<T>> m;
  std::unique_ptr<BurnsideMackey<T>> inner;
  if (o.functor == "burnside") {
    inner = std::make_unique<BurnsideMackey<T>>(ring->lattice_ptr());
    if (oracle) m = std::make_unique<OracleBurnside<T>>(*inner);
  } else if (o.functor == "fp") {
    m = std::make_unique<FixedPointMackey<T>>(make_representation<T>(o.rep, ring));
  } else if (o.functor == "fq") {
    m = std::make_unique<FixedQuotientMackey<T>>(make_representation<T>(o.rep, ring));
  } else {
    throw Error(ErrorCode::ParseError, "unknown functor '" + o.functor + "'");
  }
  const MackeyFunctor<T>& fun = m ? *m : *inner;
  std::ostringstream s;
  json out = {{"group", ring->group().label()}, {"functor", o.functor}, {"field", o.field}};
  if (o.check) {
    AxiomReport r = check_axioms(fun, lat, o.samples, o.seed);
    out["mf2"] = {{"checked", r.mf2}, {"passed", r.mf2_ok}};
    out["mf3"] = {{"checked", r.mf3}, {"passed", r.mf3_ok}};
    s << "MF2 " << r.mf2_ok << "/" << r.mf2 << "\nMF3 " << r.mf3_ok << "/" << r.mf3 << "\n";
    if (r.mf2_ok != r.mf2 || r.mf3_ok != r.mf3) throw Error(ErrorCode::InvariantViolation, "Mackey axiom failure\n" + s.str());
  }
  json ys = json::array();
  for (const auto& spec : o.y_specs) {
    auto y = read_gset(spec, ring);
    json entry = {{"Y", spec}, {"dim", fun.dim(*y)}};
    s << "dim M(" << spec << ") = " << fun.dim(*y) << "\n";
    if (!o.element.empty()) {
      auto cr = CrossedRing::create(ring);
      CrossedElement x = read_crossed(o.element, cr);
      Matrix<T> e;
      if (oracle && x.is_effective() && !x.is_zero()) {
        // one concrete crossed G-set for the whole element
        std::optional<CrossedGSetConcrete> c;
        for (const auto& [i, k] : x.coeffs())
          for (Integer r = 0; r < numerator(k); ++r) {
            const auto& p = cr->pair(i);
            auto part = crossed_from_pair(lat.group_ptr(), lat.class_rep(p.cls), p.marker);
            c = c ? crossed_sum(*c, part) : part;
          }
        e = eta(*c, fun, y);
      } else {
        e = crossed_to_endomorphism(x, fun, y);
      }
      entry["matrix"] = matrix_json(e);
      if (o.format == Format::Csv) s << matrix_to_csv(e);
      else s << "eta:\n" << matrix_to_csv(e);
    }
    ys.push_back(entry);
  }
  out["Y"] = ys;
  if (o.format == Format::Json) return dump(out);
  if (o.format == Format::Csv && o.element.empty()) throw Error(ErrorCode::InvalidArgument, "csv output needs --element");
  if (o.format == Format::Csv) {
    std::string csv;
    std::istringstream lines(s.str());
    std::string line;
    while (std::getline(lines, line))
      if (!line.starts_with("dim ") && !line.starts_with("MF")) csv += line + "\n";
    return csv;
  }
  return s.str();
}

inline std::string run_mackey(const Options& o, bool oracle) {
  if (o.field == "Q") return run_mackey_field<Rational>(o, oracle);
  if (o.field == "F2") return run_mackey_field<ModP<2>>(o, oracle);
  if (o.field == "F3") return run_mackey_field<ModP<3>>(o, oracle);
  if (o.field == "F5") return run_mackey_field<ModP<5>>(o, oracle);
  if (o.field == "F7") return run_mackey_field<ModP<7>>(o, oracle);
  throw Error(ErrorCode::NonFieldCoefficients, "coefficients '" + o.field + "' are not one of Q, F2, F3, F5, F7");
}

// ---------------------------------------------------------------------------
// hall

inline HallElement parse_hall_word(const HallGroup& g, const std::string& text) {
  HallElement w = g.identity();
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 'g' && tok[0] != 'z')) throw Error(ErrorCode::ParseError, "bad Hall token '" + tok + "'");
    auto caret = tok.find('^');
    int idx = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    HallElement gen = tok[0] == 'g' ? g.g(idx) : g.z(idx);
    w = g.mul(w, g.pow(gen, e));
  }
  return w;
}

/// |C_G(w)| = p^k by brute force over all of G.
inline std::size_t hall_centralizer_log_brute(const HallGroup& g, const HallElement& w) {
  std::vector<int> a(static_cast<std::size_t>(g.generator_count()), 0);
  std::vector<int> b(static_cast<std::size_t>(g.central_count()), 0);
  std::size_t count = 0;
  // every element is (g-part)·(central part); w commutes with x iff with its g-part
  for (;;) {
    HallElement x = g.from_exponents(a, b);
    if (g.mul(x, w) == g.mul(w, x)) ++count;
    std::size_t k = 0;
    while (k < a.size() && ++a[k] == g.p()) a[k++] = 0;
    if (k == a.size()) break;
  }
  std::size_t log = static_cast<std::size_t>(g.central_count());
  while (count > 1) {
    count /= static_cast<std::size_t>(g.p());
    ++log;
  }
  return log;
}

inline std::string run_hall(const Options& o, bool oracle) {
  require_format(o, {Format::Text, Format::Json});
  HallGroup g(o.p, o.n);
  std::vector<HallElement> words;
  if (!o.word.empty()) {
    words.push_back(parse_hall_word(g, o.word));
  } else {
    std::mt19937_64 rng(o.seed);
    for (std::size_t i = 0; i < o.samples; ++i) {
      HallElement w = g.identity();
      for (int k = -g.n() + 1; k <= g.n() - 1; ++k) w.a[k + g.n()] = static_cast<int>(rng() % static_cast<unsigned>(g.p()));
      for (auto& v : w.b) v = static_cast<int>(rng() % static_cast<unsigned>(g.p()));
      words.push_back(w);
    }
  }
  json arr = json::array();
  std::ostringstream s;
  std::size_t holds = 0;
  s << "|G| = " << g.p() << "^" << g.log_p_order() << "\n";
  for (const auto& w : words) {
    std::size_t corrected = g.corrected_centralizer(w).log_p_order;
    std::size_t claimed = g.claimed_centralizer(w).log_p_order;
    std::size_t orbit_log;
    if (oracle) {
      orbit_log = static_cast<std::size_t>(g.log_p_order()) - hall_centralizer_log_brute(g, w);
    } else {
      std::size_t sz = g.conjugacy_class(w).size();
      orbit_log = 0;
      while (sz > 1) {
        sz /= static_cast<std::size_t>(g.p());
        ++orbit_log;
      }
    }
    bool claim_ok = orbit_log + claimed == static_cast<std::size_t>(g.log_p_order());
    holds += claim_ok;
    arr.push_back({{"word", g.to_string(w)}, {"orbit_log_p", orbit_log}, {"claimed_centralizer_log_p", claimed},
                   {"corrected_centralizer_log_p", corrected}, {"claimed_product_is_order", claim_ok}});
    if (words.size() == 1)
      s << "w = " << g.to_string(w) << "\n|class| = p^" << orbit_log << "\nclaimed |C(w)| = p^" << claimed
        << "\ncorrected |C(w)| = p^" << corrected << "\n";
  }
  s << "|class|*|claimed C(w)| = |G| for " << holds << " of " << words.size() << " words\n";
  if (o.format == Format::Json)
    return dump({{"p", g.p()}, {"n", g.n()}, {"log_p_order", g.log_p_order()}, {"words", arr}, {"claim_holds", holds}});
  return s.str();
}

// ---------------------------------------------------------------------------
// Entry point

inline int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::CapExceeded: return 2;
    case ErrorCode::InvariantViolation: return 3;
    default: return 1;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Burnside rings, crossed Burnside rings and Mackey functors of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--oracle", o.oracle, "rerun through the slow independent path and require identical output");
  app.add_option("--seed", o.seed, "seed for randomized sweeps");

  auto group_arg = [&](CLI::App* sub) { sub->add_option("group", o.group, "group spec, e.g. sym:3")->required(); };

  auto* tom = app.add_subcommand("tom", "table of marks");
  group_arg(tom);
  auto* idem = app.add_subcommand("idem", "Gluck idempotents, or Dress idempotents with --integral");
  group_arg(idem);
  idem->add_flag("--integral", o.integral, "primitive integral idempotents");
  auto* mul = app.add_subcommand("mul", "product in the Burnside ring");
  group_arg(mul);
  mul->add_option("elements", o.operands, "element JSON, a file, class:<id> or one")->required()->expected(2, -1);
  auto* cb = app.add_subcommand("crossed-basis", "basis of the crossed Burnside ring");
  group_arg(cb);
  auto* cm = app.add_subcommand("crossed-mul", "product in the crossed Burnside ring");
  group_arg(cm);
  cm->add_option("elements", o.operands, "crossed element JSON, a file, pair:<id>:<a> or one")->required()->expected(2, -1);
  auto* zt = app.add_subcommand("zeta", "ζ of a crossed element, or the rank of ζ");
  group_arg(zt);
  zt->add_option("element", o.operands, "crossed element");
  auto* tw = app.add_subcommand("tower", "quotient towers and compatible families");
  tw->add_option("tower", o.tower, "zp:p=2,depth=5, zhat:depth=4, a5xz:chain=1,2,4 or custom:<path>")->required();
  tw->add_option("action", o.tower_action, "info, idem, census, check or markers")->required();
  tw->add_option("family", o.operands, "family JSON for check and markers");
  tw->add_option("--subgroup", o.subgroup, "full, index:N, index:p^n, A5xindex:N, A5xN or top:<id>");
  auto* mk = app.add_subcommand("mackey", "Mackey functor values and crossed actions");
  group_arg(mk);
  mk->add_option("--functor", o.functor, "burnside, fp or fq")->check(CLI::IsMember({"burnside", "fp", "fq"}));
  mk->add_option("--rep", o.rep, "regular, trivial, perm:<id> or sign:<id>");
  mk->add_option("--field", o.field, "Q, F2, F3, F5 or F7");
  mk->add_option("--y", o.y_specs, "cosets:<id>[+cosets:<id>...] or G-set JSON");
  mk->add_option("--element", o.element, "crossed element acting through η");
  mk->add_flag("--check", o.check, "verify MF2 and MF3 on random squares");
  mk->add_option("--samples", o.samples, "random squares for --check");
  auto* hl = app.add_subcommand("hall", "truncated Hall group");
  hl->add_option("--p", o.p, "odd prime");
  hl->add_option("--n", o.n, "truncation radius");
  hl->add_option("--word", o.word, "word such as 'g0 g1^2 z1'");
  hl->add_option("--samples", o.samples, "random interior words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return 1;
  }
  o.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
  if (const char* cap = std::getenv("BURNSIDE_CAP")) {
    try {
      o.cap = detail::parse_size(cap, "BURNSIDE_CAP");
    } catch (const Error& e) {
      err << e.what() << "\n";
      return 1;
    }
  }

  std::function<std::string(const Options&, bool)> verb;
  if (tom->parsed()) verb = run_tom;
  else if (idem->parsed()) verb = run_idem;
  else if (mul->parsed()) verb = run_mul;
  else if (cb->parsed()) verb = run_crossed_basis;
  else if (cm->parsed()) verb = run_crossed_mul;
  else if (zt->parsed()) verb = run_zeta;
  else if (tw->parsed()) verb = run_tower;
  else if (mk->parsed()) verb = run_mackey;
  else verb = run_hall;

  try {
    std::string text = verb(o, false);
    if (o.oracle) {
      std::string slow = verb(o, true);
      if (slow != text) {
        err << "InvariantViolation: oracle output differs\n--- fast\n" << text << "--- oracle\n" << slow;
        return 3;
      }
    }
    out << text;
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "InvariantViolation: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace burnside::cli
