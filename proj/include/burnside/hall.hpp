#pragma once

// Truncation of P. Hall's exponent-p class-2 group: generators g_i for
// -n <= i <= n, central generators z_j for -n < j <= n, with
//   [g_{2k-1}, g_{2k}] = z_{2k},  [g_{2k}, g_{2k+1}] = z_{2k+1}^{-1},
// and all non-adjacent generators commuting. Commutators are [x,y] = x^-1 y^-1 x y.
//
// Elements are kept in the normal form g_{-n}^{a_{-n}} ... g_n^{a_n} · Π z_j^{b_j}
// and multiplied by collection; the group is never tabulated.

#include <set>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace burnside {

struct HallElement {
  std::vector<int> a;  // exponents of g_{-n..n}, index i + n
  std::vector<int> b;  // exponents of z_{-n+1..n}, index j + n - 1

  friend bool operator==(const HallElement&, const HallElement&) = default;
  friend auto operator<=>(const HallElement&, const HallElement&) = default;
};

struct HallCentralizer {
  std::vector<int> generator_indices;  // the g_l included
  std::vector<HallElement> extra;      // further non-central generators (corrected form only)
  std::size_t log_p_order = 0;         // |C| = p^log_p_order
};

class HallGroup {
 public:
  HallGroup(int p, int n) : p_(p), n_(n) {
    if (p == 2) throw Error(ErrorCode::EvenPrime, "Hall truncation needs an odd prime");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "truncation radius must be >= 1");
  }

  int p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  int generator_count() const noexcept { return 2 * n_ + 1; }
  int central_count() const noexcept { return 2 * n_; }
  /// |G| = p^(4n+1)
  int log_p_order() const noexcept { return generator_count() + central_count(); }

  HallElement identity() const {
    return {std::vector<int>(generator_count(), 0), std::vector<int>(central_count(), 0)};
  }

  HallElement g(int i) const {
    check_g(i);
    HallElement e = identity();
    e.a[i + n_] = 1;
    return e;
  }

  HallElement z(int j) const {
    check_z(j);
    HallElement e = identity();
    e.b[j + n_ - 1] = 1;
    return e;
  }

  /// Exponent s with [g_i, g_{i+1}] = z_{i+1}^s.
  static int adjacent_sign(int i) { return (i % 2 != 0) ? 1 : -1; }

  HallElement mul(const HallElement& x, const HallElement& y) const {
    HallElement r = identity();
    for (int k = 0; k < generator_count(); ++k) r.a[k] = mod(x.a[k] + y.a[k]);
    for (int k = 0; k < central_count(); ++k) r.b[k] = x.b[k] + y.b[k];
    // moving g_j^{y_j} left past g_{j+1}^{x_{j+1}} costs [g_{j+1}, g_j]^{x_{j+1} y_j}
    for (int j = -n_; j < n_; ++j) {
      int xa = x.a[j + 1 + n_], ya = y.a[j + n_];
      if (xa == 0 || ya == 0) continue;
      r.b[j + 1 + n_ - 1] -= adjacent_sign(j) * xa * ya;
    }
    for (auto& v : r.b) v = mod(v);
    return r;
  }

  HallElement inv(const HallElement& x) const {
    HallElement neg = identity();
    for (int k = 0; k < generator_count(); ++k) neg.a[k] = mod(-x.a[k]);
    // x * (neg · z^c) = 1  =>  c = -(b + correction(x, neg))
    HallElement t = mul(x, neg);
    for (int k = 0; k < central_count(); ++k) neg.b[k] = mod(-t.b[k]);
    return neg;
  }

  HallElement pow(HallElement x, long long k) const {
    if (k < 0) {
      x = inv(x);
      k = -k;
    }
    HallElement r = identity();
    while (k > 0) {
      if (k & 1) r = mul(r, x);
      x = mul(x, x);
      k >>= 1;
    }
    return r;
  }

  HallElement conj(const HallElement& g, const HallElement& x) const {
    return mul(mul(g, x), inv(g));
  }

  HallElement commutator(const HallElement& x, const HallElement& y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  bool is_central(const HallElement& x) const {
    for (int v : x.a)
      if (v != 0) return false;
    return true;
  }

  /// Indices i with a_i != 0.
  std::vector<int> support(const HallElement& x) const {
    std::vector<int> s;
    for (int i = -n_; i <= n_; ++i)
      if (x.a[i + n_] != 0) s.push_back(i);
    return s;
  }

  /// Conjugacy class by orbit closure under conjugation by the generators g_i.
  std::set<HallElement> conjugacy_class(const HallElement& w) const {
    std::set<HallElement> orbit{w};
    std::vector<HallElement> frontier{w};
    std::vector<HallElement> gens;
    for (int i = -n_; i <= n_; ++i) gens.push_back(g(i));
    while (!frontier.empty()) {
      HallElement x = std::move(frontier.back());
      frontier.pop_back();
      for (const auto& s : gens) {
        HallElement y = conj(s, x);
        if (orbit.insert(y).second) frontier.push_back(std::move(y));
      }
    }
    return orbit;
  }

  /// The centralizer formula ⟨g_l : |l - i_s| > 1 for all s⟩ · Z, taken literally.
  HallCentralizer claimed_centralizer(const HallElement& w) const {
    HallCentralizer c;
    auto supp = support(w);
    for (int l = -n_; l <= n_; ++l) {
      bool far = true;
      for (int i : supp) far = far && std::abs(l - i) > 1;
      if (far) c.generator_indices.push_back(l);
    }
    c.log_p_order = c.generator_indices.size() + static_cast<std::size_t>(central_count());
    return c;
  }

  /// The literal formula together with the g-part of w restricted to each
  /// maximal run of consecutive support indices; this is the full centralizer.
  HallCentralizer corrected_centralizer(const HallElement& w) const {
    HallCentralizer c = claimed_centralizer(w);
    auto supp = support(w);
    for (std::size_t s = 0; s < supp.size();) {
      std::size_t e = s;
      while (e + 1 < supp.size() && supp[e + 1] == supp[e] + 1) ++e;
      HallElement run = identity();
      for (std::size_t k = s; k <= e; ++k) run.a[supp[k] + n_] = w.a[supp[k] + n_];
      c.extra.push_back(run);
      s = e + 1;
    }
    c.log_p_order += c.extra.size();
    return c;
  }

  /// Element built from a flat exponent list (a then b), reduced mod p.
  HallElement from_exponents(const std::vector<int>& a, const std::vector<int>& b) const {
    if (static_cast<int>(a.size()) != generator_count() || static_cast<int>(b.size()) != central_count())
      throw Error(ErrorCode::InvalidArgument, "wrong exponent vector length");
    HallElement e{a, b};
    for (auto& v : e.a) v = mod(v);
    for (auto& v : e.b) v = mod(v);
    return e;
  }

  std::string to_string(const HallElement& x) const {
    std::string s;
    for (int i = -n_; i <= n_; ++i)
      if (x.a[i + n_]) s += "g" + std::to_string(i) + "^" + std::to_string(x.a[i + n_]) + " ";
    for (int j = -n_ + 1; j <= n_; ++j)
      if (x.b[j + n_ - 1]) s += "z" + std::to_string(j) + "^" + std::to_string(x.b[j + n_ - 1]) + " ";
    if (s.empty()) return "1";
    s.pop_back();
    return s;
  }

 private:
  int mod(int v) const { return ((v % p_) + p_) % p_; }

  void check_g(int i) const {
    if (i < -n_ || i > n_) throw Error(ErrorCode::InvalidArgument, "g index out of range");
  }
  void check_z(int j) const {
    if (j <= -n_ || j > n_) throw Error(ErrorCode::InvalidArgument, "z index out of range");
  }

  int p_;
  int n_;
};

}  // namespace burnside
