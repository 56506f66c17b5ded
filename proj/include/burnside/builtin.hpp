#pragma once

// Group constructors: permutation closures, the builtin families and the
// group-spec string grammar
//
//   cyclic:n  dihedral:n  sym:n  alt:n  quaternion:8
//   product:A×B        (also "x" or "*" as separator; right-associative)
//   perm:(0 1 2);(0 1);deg=3
//   cayley:<path to JSON {"order": n, "mul": [[...]], "label": "..."}>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "group.hpp"

namespace burnside {

using Permutation = std::vector<std::uint32_t>;

struct PermVecHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

/// Closure of the generators under composition. Elements are numbered in
/// breadth-first discovery order from the identity, multiplying on the right by
/// generators in the order given. The product is composition a*b = a∘b.
inline FiniteGroup group_from_permutations(std::size_t degree,
                                           const std::vector<Permutation>& generators,
                                           std::size_t cap = kDefaultElementCap,
                                           std::string label = {}) {
  for (const auto& p : generators) {
    if (p.size() != degree)
      throw Error(ErrorCode::InvalidArgument, "generator has wrong degree");
    std::vector<char> hit(degree, 0);
    for (auto x : p) {
      if (x >= degree || hit[x]) throw Error(ErrorCode::InvalidArgument, "generator is not a bijection");
      hit[x] = 1;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, Elem, PermVecHash> index{{id, 0}};
  auto compose = [degree](const Permutation& a, const Permutation& b) {
    Permutation c(degree);
    for (std::size_t i = 0; i < degree; ++i) c[i] = a[b[i]];
    return c;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : generators) {
      Permutation c = compose(elems[i], s);
      if (index.emplace(c, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(c));
        if (elems.size() > cap)
          throw Error(ErrorCode::CapExceeded,
                      "permutation closure reached " + std::to_string(elems.size()) +
                          " elements (cap " + std::to_string(cap) + ")");
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup::from_flat(n, std::move(flat), std::move(label), false);
}

namespace detail {

inline std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

/// Parses one generator written as a product of cycles, e.g. "(0 1)(2 3)".
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0u);
  text = trim(text);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw Error(ErrorCode::ParseError, "expected '(' in '" + std::string(text) + "'");
    auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw Error(ErrorCode::ParseError, "unclosed cycle");
    std::vector<std::uint32_t> cycle;
    std::string body(text.substr(pos + 1, close - pos - 1));
    for (char& c : body)
      if (c == ',') c = ' ';
    std::istringstream in(body);
    std::string tok;
    while (in >> tok) {
      std::size_t v = parse_size(tok, "point");
      if (v >= degree) throw Error(ErrorCode::ParseError, "point " + tok + " >= degree");
      cycle.push_back(static_cast<std::uint32_t>(v));
    }
    // apply the cycle after what has been parsed so far (rightmost acts first)
    Permutation c(degree);
    std::iota(c.begin(), c.end(), 0u);
    for (std::size_t i = 0; i < cycle.size(); ++i) c[cycle[i]] = cycle[(i + 1) % cycle.size()];
    std::vector<char> hit(degree, 0);
    for (auto x : cycle) {
      if (hit[x]) throw Error(ErrorCode::ParseError, "repeated point in cycle");
      hit[x] = 1;
    }
    Permutation r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = p[c[i]];
    p = r;
    pos = close + 1;
  }
  return p;
}

inline std::vector<std::vector<Elem>> cyclic_table(std::size_t n) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Elem>((a + b) % n);
  return t;
}

inline FiniteGroup cyclic_group(std::size_t n, std::string label) {
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<Elem>((a + b) % n);
  return FiniteGroup::from_flat(n, std::move(flat), std::move(label), false);
}

/// Dihedral group of order 2n: r^k s^e at index e*n + k.
inline FiniteGroup dihedral_group(std::size_t n, std::string label) {
  const std::size_t m = 2 * n;
  std::vector<Elem> flat(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t a = x % n, e = x / n, b = y % n, f = y / n;
      std::size_t k = e == 0 ? (a + b) % n : (a + n - b) % n;
      flat[x * m + y] = static_cast<Elem>(((e + f) % 2) * n + k);
    }
  return FiniteGroup::from_flat(m, std::move(flat), std::move(label), false);
}

/// Quaternion group: 1,-1,i,-i,j,-j,k,-k at indices 0..7.
inline FiniteGroup quaternion_group(std::string label) {
  // unit u in {1,i,j,k} (0..3) with sign s: index 2u + s
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<Elem> flat(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = x / 2, v = y / 2;
      int s = (x % 2) ^ (y % 2) ^ sign_mul[u][v];
      flat[x * 8 + y] = static_cast<Elem>(2 * unit_mul[u][v] + s);
    }
  return FiniteGroup::from_flat(8, std::move(flat), std::move(label), false);
}

inline FiniteGroup symmetric_group(std::size_t n, std::string label) {
  if (n <= 1) return cyclic_group(1, std::move(label));
  Permutation cycle(n), swap(n);
  std::iota(swap.begin(), swap.end(), 0u);
  std::swap(swap[0], swap[1]);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
  std::vector<Permutation> gens{cycle};
  if (n > 2) gens.push_back(swap);
  return group_from_permutations(n, gens, kDefaultElementCap, std::move(label));
}

inline FiniteGroup alternating_group(std::size_t n, std::string label) {
  if (n <= 2) return cyclic_group(1, std::move(label));
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0u);
    p[0] = 1;
    p[1] = static_cast<std::uint32_t>(i);
    p[i] = 0;
    gens.push_back(p);
  }
  return group_from_permutations(n, gens, kDefaultElementCap, std::move(label));
}

inline FiniteGroup group_from_cayley_json(const nlohmann::json& j) {
  if (!j.contains("mul")) throw Error(ErrorCode::ParseError, "Cayley JSON lacks \"mul\"");
  auto rows = j.at("mul").get<std::vector<std::vector<Elem>>>();
  if (j.contains("order") && j.at("order").get<std::size_t>() != rows.size())
    throw Error(ErrorCode::ParseError, "\"order\" does not match table size");
  std::string label = j.value("label", std::string{});
  return FiniteGroup::from_cayley(rows, label);
}

}  // namespace detail

/// Parses "perm:(0 1 2);(0 1);deg=3"-style generator lists (without the prefix).
inline std::pair<std::size_t, std::vector<Permutation>> parse_permutation_spec(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';') {
      parts.push_back(detail::trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  std::optional<std::size_t> degree;
  std::vector<std::string_view> cycles;
  for (auto part : parts) {
    if (part.empty()) continue;
    if (part.starts_with("deg=")) degree = detail::parse_size(part.substr(4), "degree");
    else cycles.push_back(part);
  }
  if (!degree) throw Error(ErrorCode::ParseError, "permutation spec lacks deg=d");
  std::vector<Permutation> gens;
  for (auto c : cycles) gens.push_back(detail::parse_cycles(c, *degree));
  return {*degree, std::move(gens)};
}

/// Builds a group from a spec string; the label of the result is the spec's
/// normal form, which re-parses to the same group.
inline FiniteGroup builtin(std::string_view spec, std::size_t cap = kDefaultElementCap) {
  spec = detail::trim(spec);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::ParseError, "group spec '" + std::string(spec) + "' lacks ':'");
  std::string_view family = spec.substr(0, colon);
  std::string_view arg = spec.substr(colon + 1);

  auto check_cap = [cap](std::size_t order) {
    if (order > cap)
      throw Error(ErrorCode::CapExceeded,
                  "order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
  };

  if (family == "cyclic") {
    std::size_t n = detail::parse_size(arg, "cyclic order");
    if (n == 0) throw Error(ErrorCode::ParseError, "cyclic:0");
    check_cap(n);
    return detail::cyclic_group(n, "cyclic:" + std::to_string(n));
  }
  if (family == "dihedral") {
    std::size_t n = detail::parse_size(arg, "dihedral parameter");
    if (n == 0) throw Error(ErrorCode::ParseError, "dihedral:0");
    check_cap(2 * n);
    return detail::dihedral_group(n, "dihedral:" + std::to_string(n));
  }
  if (family == "sym" || family == "alt") {
    std::size_t n = detail::parse_size(arg, "degree");
    if (n == 0 || n > 6) throw Error(ErrorCode::ParseError, std::string(family) + ":n needs 1 <= n <= 6");
    std::size_t order = 1;
    for (std::size_t i = 2; i <= n; ++i) order *= i;
    if (family == "alt" && n >= 2) order /= 2;
    check_cap(order);
    std::string label = std::string(family) + ":" + std::to_string(n);
    return family == "sym" ? detail::symmetric_group(n, label) : detail::alternating_group(n, label);
  }
  if (family == "quaternion") {
    if (detail::parse_size(arg, "quaternion order") != 8)
      throw Error(ErrorCode::ParseError, "only quaternion:8 is supported");
    check_cap(8);
    return detail::quaternion_group("quaternion:8");
  }
  if (family == "product") {
    std::size_t sep = arg.find("\xc3\x97");  // U+00D7
    std::size_t sep_len = 2;
    if (sep == std::string_view::npos) {
      sep = arg.find_first_of("x*");
      sep_len = 1;
    }
    if (sep == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "product spec needs A×B");
    FiniteGroup a = builtin(arg.substr(0, sep), cap);
    std::string rest(arg.substr(sep + sep_len));
    if (!rest.starts_with("product:") && rest.find_first_of("x*\xc3") != std::string::npos) rest = "product:" + rest;
    FiniteGroup b = builtin(rest, cap);
    check_cap(a.order() * b.order());
    return direct_product(a, b, "product:" + a.label() + "\xc3\x97" + b.label());
  }
  if (family == "perm") {
    auto [degree, gens] = parse_permutation_spec(arg);
    return group_from_permutations(degree, gens, cap, "perm:" + std::string(arg));
  }
  if (family == "cayley") {
    std::ifstream in{std::string(arg)};
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + std::string(arg) + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    FiniteGroup g = detail::group_from_cayley_json(j);
    check_cap(g.order());
    return FiniteGroup::from_flat(g.order(), [&] {
      std::vector<Elem> flat;
      for (auto& row : g.cayley_rows()) flat.insert(flat.end(), row.begin(), row.end());
      return flat;
    }(), "cayley:" + std::string(arg), false);
  }
  throw Error(ErrorCode::ParseError, "unknown group family '" + std::string(family) + "'");
}

}  // namespace burnside
