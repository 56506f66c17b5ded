#pragma once

// JSON and CSV forms. Rationals travel as numerator/denominator strings;
// subgroups by the canonical id of their class representative.

#include <json.hpp>

#include "mackey.hpp"
#include "tower.hpp"

namespace burnside {

using nlohmann::json;

namespace detail {

inline json rational_fields(json j, const Rational& c) {
  j["num"] = to_string(numerator(c));
  j["den"] = to_string(denominator(c));
  return j;
}

inline Rational read_rational(const json& j) {
  try {
    auto field = [&](const char* k) -> std::string {
      const auto& v = j.at(k);
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    return make_rational(field("num"), j.contains("den") ? field("den") : std::string("1"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string term_string(const Rational& c, const std::string& basis, bool first) {
  std::string s;
  Rational a = c;
  if (a < 0) {
    s += first ? "-" : " - ";
    a = -a;
  } else if (!first) {
    s += " + ";
  }
  if (a != 1) s += to_string(a) + "*";
  return s + basis;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Burnside elements

inline json to_json(const BurnsideElement& x) {
  const auto& lat = x.ring()->lattice();
  json coeffs = json::array();
  for (const auto& [k, c] : x.coeffs()) coeffs.push_back(detail::rational_fields({{"class", lat.class_id(k)}}, c));
  return {{"group", x.ring()->group().label()}, {"coeffs", coeffs}};
}

inline BurnsideElement burnside_element_from_json(const json& j, const BurnsideRingPtr& ring) {
  if (j.contains("group") && j.at("group").get<std::string>() != ring->group().label())
    throw Error(ErrorCode::GroupMismatch, "element over '" + j.at("group").get<std::string>() + "', expected '" +
                                              ring->group().label() + "'");
  BurnsideElement x(ring);
  for (const auto& t : j.at("coeffs")) {
    std::string id = t.at("class").get<std::string>();
    auto cls = ring->lattice().class_by_id(id);
    if (!cls) throw Error(ErrorCode::ParseError, "unknown class id '" + id + "'");
    x.add(*cls, detail::read_rational(t));
  }
  return x;
}

/// "[G/H]" terms named by class id, e.g. "[0-1-2-3-4-5] - 1/6*[0]".
inline std::string to_text(const BurnsideElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = x.coeffs().rbegin(); it != x.coeffs().rend(); ++it) {
    s += detail::term_string(it->second, "[" + x.ring()->lattice().class_id(it->first) + "]", first);
    first = false;
  }
  return s;
}

/// Rows are the G-sets G/K, columns the fixing subgroups H, header the class ids.
inline std::string table_of_marks_csv(const BurnsideRing& ring) {
  const auto& tom = ring.table_of_marks();
  std::string s;
  for (std::size_t h = 0; h < tom.size(); ++h) s += (h ? "," : "") + ring.lattice().class_id(h);
  s += '\n';
  for (std::size_t k = 0; k < tom.size(); ++k) {
    for (std::size_t h = 0; h < tom.size(); ++h) s += (h ? "," : "") + std::to_string(tom.mark(h, k));
    s += '\n';
  }
  return s;
}

inline json table_of_marks_json(const BurnsideRing& ring) {
  const auto& tom = ring.table_of_marks();
  json classes = json::array(), rows = json::array();
  for (std::size_t c = 0; c < tom.size(); ++c) {
    classes.push_back({{"id", ring.lattice().class_id(c)},
                       {"order", ring.lattice().class_rep(c).size()},
                       {"conjugates", ring.lattice().class_size(c)}});
    json row = json::array();
    for (std::size_t h = 0; h < tom.size(); ++h) row.push_back(tom.mark(h, c));
    rows.push_back(row);
  }
  return {{"group", ring.group().label()}, {"classes", classes}, {"marks", rows}};
}

// ---------------------------------------------------------------------------
// Crossed elements

inline json to_json(const CrossedElement& x) {
  const CrossedRing& ring = *x.ring();
  json coeffs = json::array();
  for (const auto& [i, c] : x.coeffs()) {
    const auto& p = ring.pair(i);
    coeffs.push_back(detail::rational_fields({{"H", ring.lattice().class_id(p.cls)}, {"a", p.marker}}, c));
  }
  return {{"group", ring.group().label()}, {"coeffs", coeffs}};
}

/// Markers need not be canonical; each (H, a) is canonicalized on reading.
inline CrossedElement crossed_element_from_json(const json& j, const CrossedRingPtr& ring) {
  if (j.contains("group") && j.at("group").get<std::string>() != ring->group().label())
    throw Error(ErrorCode::GroupMismatch, "element over '" + j.at("group").get<std::string>() + "', expected '" +
                                              ring->group().label() + "'");
  CrossedElement x(ring);
  for (const auto& t : j.at("coeffs")) {
    std::string id = t.at("H").get<std::string>();
    auto cls = ring->lattice().class_by_id(id);
    if (!cls) throw Error(ErrorCode::ParseError, "unknown class id '" + id + "'");
    Elem a = t.at("a").get<Elem>();
    if (a >= ring->group().order()) throw Error(ErrorCode::ParseError, "marker out of range");
    x.add(ring->canonical_index(ring->lattice().representative(*cls), a), detail::read_rational(t));
  }
  return x;
}

inline std::string to_text(const CrossedElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : x.coeffs()) {
    const auto& p = x.ring()->pair(i);
    s += detail::term_string(c, "(" + x.ring()->lattice().class_id(p.cls) + "; " + std::to_string(p.marker) + ")", first);
    first = false;
  }
  return s;
}

inline json to_json(const Zeta& z) {
  json comps = json::array();
  for (std::size_t u = 0; u < z.components.size(); ++u) {
    json terms = json::array();
    for (const auto& [g, c] : z.components[u]) terms.push_back({{"g", g}, {"c", to_string(c)}});
    comps.push_back({{"U", z.ring->lattice().class_id(u)}, {"z", terms}});
  }
  return {{"group", z.ring->group().label()}, {"components", comps}};
}

// ---------------------------------------------------------------------------
// Families

template <class E>
json to_json(const CompatibleFamily<E>& f) {
  json levels = json::array();
  for (const auto& x : f.levels) levels.push_back(to_json(x));
  return {{"tower", f.tower->spec()}, {"flavor", f.flavor == Flavor::Plain ? "plain" : "crossed"}, {"levels", levels}};
}

inline PlainFamily plain_family_from_json(const json& j, const TowerPtr& t) {
  if (j.at("tower").get<std::string>() != t->spec()) throw Error(ErrorCode::GroupMismatch, "family over another tower");
  if (j.at("flavor").get<std::string>() != "plain") throw Error(ErrorCode::ParseError, "expected a plain family");
  const auto& levels = j.at("levels");
  if (levels.size() != t->depth()) throw Error(ErrorCode::ParseError, "family has the wrong number of levels");
  PlainFamily f{t, {}};
  for (std::size_t i = 0; i < levels.size(); ++i) f.levels.push_back(burnside_element_from_json(levels[i], t->level(i)));
  return f;
}

inline CrossedFamily crossed_family_from_json(const json& j, const TowerPtr& t) {
  if (j.at("tower").get<std::string>() != t->spec()) throw Error(ErrorCode::GroupMismatch, "family over another tower");
  if (j.at("flavor").get<std::string>() != "crossed") throw Error(ErrorCode::ParseError, "expected a crossed family");
  const auto& levels = j.at("levels");
  if (levels.size() != t->depth()) throw Error(ErrorCode::ParseError, "family has the wrong number of levels");
  CrossedFamily f{t, {}};
  for (std::size_t i = 0; i < levels.size(); ++i)
    f.levels.push_back(crossed_element_from_json(levels[i], t->crossed_level(i)));
  return f;
}

// ---------------------------------------------------------------------------
// G-sets

/// {"group": spec, "points": m, "action": [[g·0, g·1, ...] for each g]}
inline json to_json(const GSet& x) {
  json rows = json::array();
  for (Elem g = 0; g < x.group().order(); ++g) {
    json row = json::array();
    for (std::size_t p = 0; p < x.size(); ++p) row.push_back(x.act(g, p));
    rows.push_back(row);
  }
  return {{"group", x.group().label()}, {"points", x.size()}, {"action", rows}};
}

inline GSet gset_from_json(const json& j, const GroupPtr& g) {
  if (j.contains("group") && j.at("group").get<std::string>() != g->label())
    throw Error(ErrorCode::GroupMismatch, "G-set over another group");
  try {
    std::size_t m = j.at("points").get<std::size_t>();
    auto rows = j.at("action").get<std::vector<std::vector<std::size_t>>>();
    if (rows.size() != g->order()) throw Error(ErrorCode::ParseError, "one action row per group element expected");
    std::vector<std::size_t> flat;
    for (const auto& r : rows) {
      if (r.size() != m) throw Error(ErrorCode::ParseError, "action row has wrong length");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return GSet(g, m, std::move(flat));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <class T>
json matrix_json(const Matrix<T>& m) {
  using burnside::to_string;
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace burnside
