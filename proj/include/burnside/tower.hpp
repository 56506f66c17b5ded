#pragma once

// Finite quotient towers G_0 <- G_1 <- ... <- G_{d-1} standing in for a
// profinite group, and families of (crossed) Burnside elements over them that
// are compatible with the Fix transitions.
//
// Level 0 is the coarsest quotient; maps[i] : G_{i+1} -> G_i.

#include <cctype>
#include <fstream>

#include <json.hpp>

#include "builtin.hpp"
#include "crossed.hpp"

namespace burnside {

enum class TowerKind { Zp, Zhat, A5xZ, Custom };

inline std::string kind_name(TowerKind k) {
  switch (k) {
    case TowerKind::Zp: return "zp";
    case TowerKind::Zhat: return "zhat";
    case TowerKind::A5xZ: return "a5xz";
    case TowerKind::Custom: return "custom";
  }
  return "?";
}

class QuotientTower {
 public:
  QuotientTower(TowerKind kind, std::string spec, std::vector<BurnsideRingPtr> levels,
                std::vector<std::shared_ptr<const Surjection>> maps, std::vector<std::size_t> moduli, long long prime)
      : kind_(kind), spec_(std::move(spec)), levels_(std::move(levels)), maps_(std::move(maps)),
        moduli_(std::move(moduli)), prime_(prime) {
    if (levels_.empty()) throw Error(ErrorCode::InvalidArgument, "tower has no levels");
    if (maps_.size() + 1 != levels_.size()) throw Error(ErrorCode::InvalidArgument, "tower needs one map per step");
    for (std::size_t i = 0; i < maps_.size(); ++i)
      if (maps_[i]->source() != levels_[i + 1] || maps_[i]->target() != levels_[i])
        throw Error(ErrorCode::GroupMismatch, "tower map " + std::to_string(i) + " does not join its levels");
    for (const auto& l : levels_) crossed_.push_back(CrossedRing::create(l));
  }

  TowerKind kind() const noexcept { return kind_; }
  const std::string& spec() const noexcept { return spec_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  const BurnsideRingPtr& level(std::size_t i) const { return levels_.at(i); }
  const CrossedRingPtr& crossed_level(std::size_t i) const { return crossed_.at(i); }
  /// maps[i] : G_{i+1} -> G_i
  const Surjection& map(std::size_t i) const { return *maps_.at(i); }

  /// m_i with G_i = Z/m_i (zp, zhat) or A5 x Z/m_i (a5xz); empty for custom towers.
  const std::vector<std::size_t>& moduli() const noexcept { return moduli_; }
  /// The prime of a zp tower, 0 otherwise.
  long long prime() const noexcept { return prime_; }

  /// The composite surjection G_from -> G_to.
  Surjection composite(std::size_t from, std::size_t to) const {
    check_order(from, to);
    std::vector<Elem> table(levels_[from]->group().order());
    for (Elem x = 0; x < table.size(); ++x) {
      Elem y = x;
      for (std::size_t i = from; i > to; --i) y = (*maps_[i - 1])(y);
      table[x] = y;
    }
    return Surjection(levels_[from], levels_[to], std::move(table));
  }

  /// ker(G_from -> G_to) as a subgroup of G_from.
  Subgroup kernel(std::size_t from, std::size_t to) const { return composite(from, to).kernel(); }

  void check_order(std::size_t from, std::size_t to) const {
    if (from >= depth() || to >= depth())
      throw Error(ErrorCode::InvalidArgument, "tower level out of range");
    if (to > from)
      throw Error(ErrorCode::LevelOrder, "cannot transition from level " + std::to_string(from) + " up to level " +
                                              std::to_string(to));
  }

 private:
  TowerKind kind_;
  std::string spec_;
  std::vector<BurnsideRingPtr> levels_;
  std::vector<CrossedRingPtr> crossed_;
  std::vector<std::shared_ptr<const Surjection>> maps_;
  std::vector<std::size_t> moduli_;
  long long prime_;
};

using TowerPtr = std::shared_ptr<const QuotientTower>;

namespace detail {

inline std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> out;
  // "p=2,depth=5" or "chain=1,2,4": commas after a value without '=' extend it
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == ',') {
      pieces.emplace_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  std::string last;
  for (auto& p : pieces) {
    auto eq = p.find('=');
    if (eq == std::string::npos) {
      if (last.empty()) throw Error(ErrorCode::ParseError, "tower parameter '" + p + "' has no name");
      out[last] += "," + p;
      continue;
    }
    last = p.substr(0, eq);
    out[last] = p.substr(eq + 1);
  }
  return out;
}

inline std::vector<std::size_t> parse_chain(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == ',') {
      out.push_back(parse_size(trim(std::string_view(text).substr(start, i - start)), "chain entry"));
      start = i + 1;
    }
  return out;
}

inline std::size_t param_size(const std::map<std::string, std::string>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::ParseError, "tower spec lacks " + key + "=");
  return parse_size(it->second, key);
}

/// Levels Z/m_0 <- Z/m_1 <- ... (or A5 x Z/m_i) with reduction maps.
inline std::shared_ptr<const QuotientTower> chain_tower(TowerKind kind, std::string spec,
                                                        const std::vector<std::size_t>& chain, bool with_a5,
                                                        long long prime, std::size_t cap) {
  if (chain.empty()) throw Error(ErrorCode::BadDivisorChain, "empty chain");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] == 0) throw Error(ErrorCode::BadDivisorChain, "chain entry 0");
    if (i > 0 && chain[i] % chain[i - 1] != 0)
      throw Error(ErrorCode::BadDivisorChain,
                  std::to_string(chain[i - 1]) + " does not divide " + std::to_string(chain[i]));
  }
  std::vector<BurnsideRingPtr> levels;
  const std::size_t a = with_a5 ? 60 : 1;
  for (std::size_t m : chain) {
    if (a * m > cap)
      throw Error(ErrorCode::CapExceeded, "tower level of order " + std::to_string(a * m) + " exceeds cap " +
                                              std::to_string(cap));
    std::string g = with_a5 ? (m == 1 ? "alt:5" : "product:alt:5\xc3\x97" "cyclic:" + std::to_string(m))
                            : "cyclic:" + std::to_string(m);
    levels.push_back(BurnsideRing::create(builtin(g, cap), cap));
  }
  std::vector<std::shared_ptr<const Surjection>> maps;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const std::size_t hi = chain[i + 1], lo = chain[i];
    std::vector<Elem> table(a * hi);
    // A5 x Z/m stores (x, k) at x*m + k
    for (std::size_t x = 0; x < a; ++x)
      for (std::size_t k = 0; k < hi; ++k) table[x * hi + k] = static_cast<Elem>(x * lo + k % lo);
    maps.push_back(std::make_shared<const Surjection>(levels[i + 1], levels[i], std::move(table)));
  }
  return std::make_shared<const QuotientTower>(kind, std::move(spec), std::move(levels), std::move(maps), chain,
                                               prime);
}

inline FiniteGroup group_from_level_json(const nlohmann::json& j, std::size_t cap) {
  if (j.is_string()) return builtin(j.get<std::string>(), cap);
  if (j.is_object()) return group_from_cayley_json(j);
  throw Error(ErrorCode::ParseError, "tower level must be a group spec string or a Cayley object");
}

}  // namespace detail

/// "zp:p=2,depth=5", "zhat:depth=4", "a5xz:chain=1,2,4", "custom:<path>". The
/// custom JSON is {"levels": [group spec or Cayley object, ...], "maps": [[...],
/// ...]} with maps[i] the table of G_{i+1} -> G_i.
inline TowerPtr tower_build(std::string_view spec, std::size_t cap = kDefaultLatticeCap) {
  spec = detail::trim(spec);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "tower spec lacks ':'");
  std::string kind(spec.substr(0, colon));
  std::string_view arg = spec.substr(colon + 1);

  if (kind == "zp") {
    auto params = detail::parse_params(arg);
    long long p = static_cast<long long>(detail::param_size(params, "p"));
    std::size_t depth = detail::param_size(params, "depth");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
    std::vector<std::size_t> chain;
    std::size_t m = 1;
    for (std::size_t i = 0; i < depth; ++i) {
      if (m > cap) throw Error(ErrorCode::CapExceeded, "Z/p^k beyond cap");
      m *= static_cast<std::size_t>(p);
      chain.push_back(m);
    }
    return detail::chain_tower(TowerKind::Zp, "zp:p=" + std::to_string(p) + ",depth=" + std::to_string(depth),
                               chain, false, p, cap);
  }
  if (kind == "zhat") {
    auto params = detail::parse_params(arg);
    std::size_t depth = detail::param_size(params, "depth");
    if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
    std::vector<std::size_t> chain;
    std::size_t m = 1;
    for (std::size_t i = 1; i <= depth; ++i) {
      if (m > cap) throw Error(ErrorCode::CapExceeded, "Z/k! beyond cap");
      m *= i;
      chain.push_back(m);
    }
    return detail::chain_tower(TowerKind::Zhat, "zhat:depth=" + std::to_string(depth), chain, false, 0, cap);
  }
  if (kind == "a5xz") {
    auto params = detail::parse_params(arg);
    auto it = params.find("chain");
    if (it == params.end()) throw Error(ErrorCode::ParseError, "a5xz spec lacks chain=");
    auto chain = detail::parse_chain(it->second);
    std::string normal = "a5xz:chain=";
    for (std::size_t i = 0; i < chain.size(); ++i) normal += (i ? "," : "") + std::to_string(chain[i]);
    return detail::chain_tower(TowerKind::A5xZ, normal, chain, true, 0, cap);
  }
  if (kind == "custom") {
    std::ifstream in{std::string(arg)};
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + std::string(arg) + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.contains("levels") || !j.at("levels").is_array() || j.at("levels").empty())
      throw Error(ErrorCode::ParseError, "custom tower needs a nonempty \"levels\" array");
    std::vector<BurnsideRingPtr> levels;
    for (const auto& l : j.at("levels")) {
      FiniteGroup g = detail::group_from_level_json(l, cap);
      if (g.order() > cap)
        throw Error(ErrorCode::CapExceeded, "tower level of order " + std::to_string(g.order()) + " exceeds cap");
      levels.push_back(BurnsideRing::create(std::move(g), cap));
    }
    auto tables = j.value("maps", std::vector<std::vector<Elem>>{});
    if (tables.size() + 1 != levels.size())
      throw Error(ErrorCode::ParseError, "custom tower needs one map per step");
    std::vector<std::shared_ptr<const Surjection>> maps;
    for (std::size_t i = 0; i < tables.size(); ++i)
      maps.push_back(std::make_shared<const Surjection>(levels[i + 1], levels[i], std::move(tables[i])));
    return std::make_shared<const QuotientTower>(TowerKind::Custom, "custom:" + std::string(arg), std::move(levels),
                                                 std::move(maps), std::vector<std::size_t>{}, 0);
  }
  throw Error(ErrorCode::ParseError, "unknown tower kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Transitions

inline BurnsideElement transition(const QuotientTower& t, std::size_t from, std::size_t to, BurnsideElement x) {
  t.check_order(from, to);
  if (x.ring() != t.level(from)) throw Error(ErrorCode::GroupMismatch, "element is not over level " + std::to_string(from));
  for (std::size_t i = from; i > to; --i) x = fix(t.map(i - 1), x);
  return x;
}

inline CrossedElement transition(const QuotientTower& t, std::size_t from, std::size_t to, CrossedElement x) {
  t.check_order(from, to);
  if (x.ring() != t.crossed_level(from))
    throw Error(ErrorCode::GroupMismatch, "crossed element is not over level " + std::to_string(from));
  for (std::size_t i = from; i > to; --i) x = crossed_fix(t.map(i - 1), t.crossed_level(i - 1), x);
  return x;
}

enum class Flavor { Plain, Crossed };

template <class E>
constexpr Flavor flavor_of() {
  return std::is_same_v<E, CrossedElement> ? Flavor::Crossed : Flavor::Plain;
}

/// One element per tower level.
template <class E>
struct CompatibleFamily {
  TowerPtr tower;
  std::vector<E> levels;

  static constexpr Flavor flavor = flavor_of<E>();

  /// Smallest level i with transition(x_{i+1}) != x_i, if any.
  std::optional<std::size_t> first_incompatible_level() const {
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
      if (!(transition(*tower, i + 1, i, levels[i + 1]) == levels[i])) return i;
    return std::nullopt;
  }

  bool is_compatible() const { return !first_incompatible_level().has_value(); }

  friend bool operator==(const CompatibleFamily& a, const CompatibleFamily& b) {
    return a.tower == b.tower && a.levels == b.levels;
  }
};

using PlainFamily = CompatibleFamily<BurnsideElement>;
using CrossedFamily = CompatibleFamily<CrossedElement>;

template <class E>
CompatibleFamily<E> levelwise_add(const CompatibleFamily<E>& x, const CompatibleFamily<E>& y) {
  if (x.tower != y.tower) throw Error(ErrorCode::GroupMismatch, "families over different towers");
  CompatibleFamily<E> r{x.tower, {}};
  for (std::size_t i = 0; i < x.levels.size(); ++i) r.levels.push_back(x.levels[i] + y.levels[i]);
  return r;
}

template <class E>
CompatibleFamily<E> levelwise_multiply(const CompatibleFamily<E>& x, const CompatibleFamily<E>& y) {
  if (x.tower != y.tower) throw Error(ErrorCode::GroupMismatch, "families over different towers");
  CompatibleFamily<E> r{x.tower, {}};
  for (std::size_t i = 0; i < x.levels.size(); ++i) r.levels.push_back(x.levels[i] * y.levels[i]);
  return r;
}

/// The family determined by an element at the top level.
inline PlainFamily family_from_top(const TowerPtr& t, const BurnsideElement& top) {
  PlainFamily f{t, std::vector<BurnsideElement>(t->depth(), BurnsideElement(t->level(0)))};
  f.levels.back() = top;
  for (std::size_t i = t->depth() - 1; i > 0; --i) f.levels[i - 1] = fix(t->map(i - 1), f.levels[i]);
  return f;
}

inline CrossedFamily family_from_top(const TowerPtr& t, const CrossedElement& top) {
  CrossedFamily f{t, std::vector<CrossedElement>(t->depth(), CrossedElement(t->crossed_level(0)))};
  f.levels.back() = top;
  for (std::size_t i = t->depth() - 1; i > 0; --i)
    f.levels[i - 1] = crossed_fix(t->map(i - 1), t->crossed_level(i - 1), f.levels[i]);
  return f;
}

inline PlainFamily constant_one(const TowerPtr& t) {
  PlainFamily f{t, {}};
  for (std::size_t i = 0; i < t->depth(); ++i) f.levels.push_back(BurnsideElement::one(t->level(i)));
  return f;
}

inline CrossedFamily embed_family(const PlainFamily& f) {
  CrossedFamily r{f.tower, {}};
  for (std::size_t i = 0; i < f.levels.size(); ++i)
    r.levels.push_back(embed_burnside(f.tower->crossed_level(i), f.levels[i]));
  return r;
}

// ---------------------------------------------------------------------------
// Idempotent families

namespace detail {

/// The subgroup of index n in Z/m (elements divisible by n), or A5 x that.
inline std::optional<Subgroup> index_subgroup(const FiniteGroup& g, std::size_t m, std::size_t n, bool with_a5) {
  if (m % n != 0) return std::nullopt;
  std::vector<Elem> elems;
  const std::size_t a = with_a5 ? 60 : 1;
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t k = 0; k < m; k += n) elems.push_back(static_cast<Elem>(x * m + k));
  return Subgroup(g.order(), std::move(elems));
}

inline std::size_t parse_index(std::string_view text, long long prime) {
  auto caret = text.find('^');
  if (caret == std::string_view::npos) return parse_size(text, "index");
  std::string_view base = trim(text.substr(0, caret));
  std::size_t b;
  if (base == "p") {
    if (prime == 0) throw Error(ErrorCode::SpecUnresolvable, "'p' is only meaningful on zp towers");
    b = static_cast<std::size_t>(prime);
  } else {
    b = parse_size(base, "index base");
  }
  std::size_t e = parse_size(trim(text.substr(caret + 1)), "index exponent");
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (std::size_t{1} << 40)) throw Error(ErrorCode::SpecUnresolvable, "index too large");
    r *= b;
  }
  return r;
}

}  // namespace detail

/// Per level i, e_{H_i} for the image H_i of the open subgroup named by the
/// H-spec, and 0 at levels whose kernel is not inside H. Grammar:
///   full            the whole group
///   index:N         index-N subgroup (zp, zhat); N may be written p^n or b^n
///   A5xindex:N      A5 x (index-N subgroup) on a5xz towers; A5xN is short for it
///   top:<id>        class <id> at the top level, pushed down
inline PlainFamily idempotent_family(const TowerPtr& t, std::string_view hspec) {
  hspec = detail::trim(hspec);
  const std::size_t d = t->depth();
  if (hspec.starts_with("top:")) {
    auto cls = t->level(d - 1)->lattice().class_by_id(hspec.substr(4));
    if (!cls) throw Error(ErrorCode::SpecUnresolvable, "no class '" + std::string(hspec.substr(4)) + "' at the top level");
    return family_from_top(t, gluck_idempotent(t->level(d - 1), *cls));
  }
  PlainFamily f{t, {}};
  if (hspec == "full") {
    for (std::size_t i = 0; i < d; ++i) f.levels.push_back(gluck_idempotent(t->level(i), t->level(i)->rank() - 1));
    return f;
  }
  bool with_a5 = false;
  std::string_view index_text;
  if (hspec.starts_with("index:")) {
    if (t->kind() != TowerKind::Zp && t->kind() != TowerKind::Zhat)
      throw Error(ErrorCode::SpecUnresolvable, "index:N needs a procyclic tower");
    index_text = hspec.substr(6);
  } else if (hspec.starts_with("A5xindex:")) {
    if (t->kind() != TowerKind::A5xZ) throw Error(ErrorCode::SpecUnresolvable, "A5xindex:N needs an a5xz tower");
    index_text = hspec.substr(9);
    with_a5 = true;
  } else if (hspec.starts_with("A5x") && hspec.size() > 3 && std::isdigit(static_cast<unsigned char>(hspec[3]))) {
    if (t->kind() != TowerKind::A5xZ) throw Error(ErrorCode::SpecUnresolvable, "A5xN needs an a5xz tower");
    index_text = hspec.substr(3);
    with_a5 = true;
  } else {
    throw Error(ErrorCode::SpecUnresolvable, "unrecognized subgroup spec '" + std::string(hspec) + "'");
  }
  std::size_t n = detail::parse_index(index_text, t->prime());
  if (n == 0) throw Error(ErrorCode::SpecUnresolvable, "index 0");
  if (t->moduli().back() % n != 0)
    throw Error(ErrorCode::SpecUnresolvable, "index " + std::to_string(n) + " is not visible at depth " +
                                                 std::to_string(d));
  for (std::size_t i = 0; i < d; ++i) {
    const auto& ring = t->level(i);
    auto h = detail::index_subgroup(ring->group(), t->moduli()[i], n, with_a5);
    f.levels.push_back(h ? gluck_idempotent(ring, ring->lattice().class_of(*h)) : BurnsideElement(ring));
  }
  return f;
}

/// (1/p^n)[G/p^nG] - (1/p^{n+1})[G/p^{n+1}G] in B(Z/p^m), for m >= n+1.
inline BurnsideElement zp_closed_form(const BurnsideRingPtr& ring, long long p, std::size_t n) {
  const std::size_t m = ring->group().order();
  std::size_t pn = 1;
  for (std::size_t i = 0; i < n; ++i) pn *= static_cast<std::size_t>(p);
  const std::size_t pn1 = pn * static_cast<std::size_t>(p);
  if (m % pn1 != 0) throw Error(ErrorCode::InvalidArgument, "closed form needs m >= n+1");
  auto h = detail::index_subgroup(ring->group(), m, pn, false);
  auto k = detail::index_subgroup(ring->group(), m, pn1, false);
  BurnsideElement x(ring);
  x.add(ring->lattice().class_of(*h), Rational(1, static_cast<long long>(pn)));
  x.add(ring->lattice().class_of(*k), Rational(-1, static_cast<long long>(pn1)));
  return x;
}

// ---------------------------------------------------------------------------
// Prosolubility census

struct CensusLevel {
  std::size_t order = 0;
  std::size_t classes = 0;
  bool soluble = false;
  std::size_t dress_count = 0;     // number of primitive integral idempotents
  std::size_t idempotent_count = 0;
  bool brute_force = false;        // idempotent_count from the exhaustive scan
};

struct CensusReport {
  std::vector<CensusLevel> levels;
  std::size_t coherent_family_count = 0;
  bool nontrivial_family = false;
  std::vector<PlainFamily> families;  // listed when there are at most 64
};

/// Idempotents of B(G) as the Boolean algebra on the Dress idempotents.
inline std::vector<BurnsideElement> dress_boolean_algebra(const BurnsideRingPtr& ring) {
  auto prim = integral_idempotents(ring);
  if (prim.size() > 16) throw Error(ErrorCode::CapExceeded, "too many primitive idempotents to list");
  std::vector<BurnsideElement> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << prim.size()); ++s) {
    BurnsideElement x(ring);
    for (std::size_t i = 0; i < prim.size(); ++i)
      if (s >> i & 1) x += prim[i].element;
    out.push_back(std::move(x));
  }
  return out;
}

/// Per-level idempotent counts and the coherent idempotent families. A family
/// over a finite tower is determined by its top level, so the coherent
/// idempotent families are the top-level idempotents pushed down.
inline CensusReport prosoluble_census(const TowerPtr& t, std::size_t census_cap = kDefaultCensusCap) {
  CensusReport rep;
  std::vector<std::vector<BurnsideElement>> brute(t->depth());
  for (std::size_t i = 0; i < t->depth(); ++i) {
    const auto& ring = t->level(i);
    CensusLevel l;
    l.order = ring->group().order();
    l.classes = ring->rank();
    l.soluble = is_soluble(ring->group());
    l.dress_count = integral_idempotents(ring).size();
    if (l.classes <= census_cap) {
      brute[i] = idempotent_census(ring, census_cap);
      l.idempotent_count = brute[i].size();
      l.brute_force = true;
      if (l.idempotent_count != (std::size_t{1} << l.dress_count))
        throw Error(ErrorCode::InvariantViolation, "census at level " + std::to_string(i) + " disagrees with Dress");
    } else {
      l.idempotent_count = std::size_t{1} << l.dress_count;
    }
    rep.levels.push_back(l);
  }
  const std::size_t top_dress = rep.levels.back().dress_count;
  rep.coherent_family_count = std::size_t{1} << top_dress;
  rep.nontrivial_family = rep.coherent_family_count > 2;
  if (top_dress <= 6) {
    for (const auto& e : dress_boolean_algebra(t->level(t->depth() - 1))) {
      PlainFamily f = family_from_top(t, e);
      for (std::size_t i = 0; i < t->depth(); ++i) {
        if (!(multiply(f.levels[i], f.levels[i]) == f.levels[i]))
          throw Error(ErrorCode::InvariantViolation, "pushed-down idempotent is not idempotent");
        if (rep.levels[i].brute_force && std::find(brute[i].begin(), brute[i].end(), f.levels[i]) == brute[i].end())
          throw Error(ErrorCode::InvariantViolation, "pushed-down idempotent missing from census");
      }
      rep.families.push_back(std::move(f));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Marker recovery for crossed families

struct MarkerChain {
  std::size_t top_index;   // basis pair at the top level
  Rational coefficient;
  /// Canonical pair at each level while the line survives (the kernel lies
  /// in the image of U); nullopt below that.
  std::vector<std::optional<CrossedPair>> pairs;
  /// The marker coset a·N_i as elements of the top group, per surviving level.
  std::vector<std::vector<Elem>> cosets;
};

/// Traces every top-level basis line of a crossed family down the tower,
/// recording marker cosets, and checks at each level that [a,U] ⊆ N_i, that the
/// cosets are nested, and that the images add up to the family's member there.
inline std::vector<MarkerChain> crossed_family_marker_recovery(const CrossedFamily& f) {
  const QuotientTower& t = *f.tower;
  const std::size_t d = t.depth();
  if (f.levels.size() != d) throw Error(ErrorCode::InvalidArgument, "family has the wrong number of levels");
  const auto& top_ring = t.crossed_level(d - 1);
  const FiniteGroup& top = top_ring->group();
  const auto& top_lat = top_ring->lattice();
  std::vector<Surjection> down;  // G_top -> G_i
  for (std::size_t i = 0; i < d; ++i) down.push_back(t.composite(d - 1, i));

  std::vector<MarkerChain> chains;
  for (const auto& [idx, c] : f.levels.back().coeffs()) {
    MarkerChain ch{idx, c, std::vector<std::optional<CrossedPair>>(d), std::vector<std::vector<Elem>>(d)};
    const auto& p = top_ring->pair(idx);
    const Subgroup& u = top_lat.class_rep(p.cls);
    for (std::size_t i = d; i-- > 0;) {
      const Surjection& pi = down[i];
      if (!pi.kernel().is_subset_of(u)) break;
      for (Elem x : u.elements())
        if (!pi.kernel().contains(top.commutator(p.marker, x)))
          throw Error(ErrorCode::IncoherentMarkers, "level " + std::to_string(i) + ": [a,U] not inside N");
      Elem img = pi(p.marker);
      for (Elem x = 0; x < top.order(); ++x)
        if (pi(x) == img) ch.cosets[i].push_back(x);
      if (i + 1 < d && !ch.cosets[i + 1].empty() &&
          !std::includes(ch.cosets[i].begin(), ch.cosets[i].end(), ch.cosets[i + 1].begin(), ch.cosets[i + 1].end()))
        throw Error(ErrorCode::IncoherentMarkers, "level " + std::to_string(i) + ": marker cosets are not nested");
      ch.pairs[i] = t.crossed_level(i)->pair(t.crossed_level(i)->canonical_index(pi.image(u), img));
    }
    chains.push_back(std::move(ch));
  }
  for (std::size_t i = d; i-- > 0;) {
    CrossedElement sum(t.crossed_level(i));
    for (const auto& ch : chains)
      if (ch.pairs[i]) sum.add(t.crossed_level(i)->index_of(*ch.pairs[i]), ch.coefficient);
    if (!(sum == f.levels[i]))
      throw Error(ErrorCode::IncoherentMarkers, "level " + std::to_string(i) + ": marker lines do not reassemble the family");
  }
  return chains;
}

}  // namespace burnside
