#pragma once

// Exact exponential-polynomial symbols on the (p,q) phase plane and the
// terminating Moyal star product.
//
// A symbol is a finite sum  sum_{m,k} c_{m,k} p^m e^{kq}  with m >= 0, k in Z and
// Gaussian-rational coefficients. The family is closed under d/dp, d/dq and
// pointwise products, so the bidifferential operators P^r and the star product
// are computed exactly.

#include <array>
#include <complex>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "affq/rational.hpp"

namespace affq {

enum class Var { p, q };

class ExpPolySymbol {
 public:
  /// (m, k): power of p and frequency of e^{kq}.
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, GaussianRational>;

  ExpPolySymbol() = default;

  static ExpPolySymbol constant(GaussianRational c) { return monomial(0, 0, std::move(c)); }

  static ExpPolySymbol monomial(int m, int k, GaussianRational c = GaussianRational(1)) {
    ExpPolySymbol s;
    s.add_term(m, k, c);
    return s;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  GaussianRational coeff(int m, int k) const {
    auto it = terms_.find({m, k});
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  /// Highest power of p; -1 for the zero symbol.
  int deg_p() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first);
    return d;
  }

  /// Adds c p^m e^{kq}, keeping the canonical form (no stored zeros).
  void add_term(int m, int k, const GaussianRational& c) {
    if (m < 0) throw std::invalid_argument("negative power of p in symbol term");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{m, k}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ExpPolySymbol& operator+=(const ExpPolySymbol& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
  }
  ExpPolySymbol& operator-=(const ExpPolySymbol& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
  }
  ExpPolySymbol& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
  }

  friend ExpPolySymbol operator+(ExpPolySymbol a, const ExpPolySymbol& b) { return a += b; }
  friend ExpPolySymbol operator-(ExpPolySymbol a, const ExpPolySymbol& b) { return a -= b; }
  friend ExpPolySymbol operator-(ExpPolySymbol a) { return a *= GaussianRational(-1); }
  friend ExpPolySymbol operator*(ExpPolySymbol a, const GaussianRational& s) { return a *= s; }
  friend ExpPolySymbol operator*(const GaussianRational& s, ExpPolySymbol a) { return a *= s; }

  /// Pointwise product.
  friend ExpPolySymbol operator*(const ExpPolySymbol& a, const ExpPolySymbol& b) {
    ExpPolySymbol out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }

  friend bool operator==(const ExpPolySymbol& a, const ExpPolySymbol& b) { return a.terms_ == b.terms_; }

  std::complex<double> evaluate(double p, double q) const {
    std::complex<double> acc = 0.0;
    for (const auto& [key, c] : terms_)
      acc += c.to_complex() * std::pow(p, key.first) * std::exp(key.second * q);
    return acc;
  }

 private:
  Terms terms_;
};

/// Constant Poisson tensor in (p, q) order, normalised so that the first
/// contraction P^1 is the bracket {u,v} = u_p v_q - u_q v_p.
struct PoissonTensor {
  static constexpr std::array<std::array<int, 2>, 2> matrix{{{0, 1}, {-1, 0}}};
  static constexpr int at(Var i, Var j) { return matrix[static_cast<int>(i)][static_cast<int>(j)]; }
};

/// Exact partial derivative of the given order.
inline ExpPolySymbol derive(const ExpPolySymbol& u, Var var, int order = 1) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  if (order == 0) return u;
  ExpPolySymbol out;
  for (const auto& [key, c] : u.terms()) {
    auto [m, k] = key;
    if (var == Var::p) {
      if (m < order) continue;
      Integer falling = 1;
      for (int j = 0; j < order; ++j) falling *= (m - j);
      out.add_term(m - order, k, c * GaussianRational(Rational(falling)));
    } else {
      if (k == 0) continue;
      Integer power = boost::multiprecision::pow(Integer(k), static_cast<unsigned>(order));
      out.add_term(m, k, c * GaussianRational(Rational(power)));
    }
  }
  return out;
}

inline ExpPolySymbol derive(const ExpPolySymbol& u, int p_order, int q_order) {
  return derive(derive(u, Var::p, p_order), Var::q, q_order);
}

namespace detail {
inline Integer binomial(int n, int k) {
  Integer b = 1;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}
inline Integer factorial(int n) {
  Integer f = 1;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}
}  // namespace detail

/// r-th bidifferential operator of the Moyal product:
///   P^r(u,v) = sum_j C(r,j) (-1)^(r-j) d_p^j d_q^(r-j) u * d_p^(r-j) d_q^j v,
/// the two-dimensional expansion of the r-fold contraction against PoissonTensor.
/// P^0 is the pointwise product.
inline ExpPolySymbol p_r(const ExpPolySymbol& u, const ExpPolySymbol& v, int r) {
  if (r < 0) throw std::invalid_argument("negative order in P^r");
  ExpPolySymbol out;
  const int du = u.deg_p();
  const int dv = v.deg_p();
  for (int j = 0; j <= r; ++j) {
    // d_p^j u and d_p^(r-j) v vanish past the p-degrees.
    if (j > du || r - j > dv) continue;
    ExpPolySymbol term = derive(u, j, r - j) * derive(v, r - j, j);
    if (term.is_zero()) continue;
    Rational w(detail::binomial(r, j));
    if ((r - j) % 2 != 0) w = -w;
    out += term * GaussianRational(w);
  }
  return out;
}

/// Poisson bracket {u,v} = P^1(u,v).
inline ExpPolySymbol poisson(const ExpPolySymbol& u, const ExpPolySymbol& v) { return p_r(u, v, 1); }

/// Moyal product u * v = sum_r (1/r!) (1/2i)^r P^r(u,v). On this algebra the
/// series stops at r = deg_p(u) + deg_p(v).
inline ExpPolySymbol star(const ExpPolySymbol& u, const ExpPolySymbol& v) {
  ExpPolySymbol out;
  if (u.is_zero() || v.is_zero()) return out;
  const int r_max = u.deg_p() + v.deg_p();
  const GaussianRational minus_half_i(Rational(0), Rational(-1, 2));  // 1/(2i)
  GaussianRational weight(1);
  for (int r = 0; r <= r_max; ++r) {
    if (r > 0) weight *= minus_half_i * GaussianRational(Rational(1, r));
    out += p_r(u, v, r) * weight;
  }
  return out;
}

inline ExpPolySymbol star_commutator(const ExpPolySymbol& u, const ExpPolySymbol& v) {
  return star(u, v) - star(v, u);
}

}  // namespace affq
