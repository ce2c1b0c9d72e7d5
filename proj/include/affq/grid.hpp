#pragma once

// Rectangular lattices for the numerical pipeline and the unitary partial
// Fourier transform in p.
//
// Storage is row-major. Rows run over the slow coordinate and columns over the
// fast one:
//   PQ : rows q, columns p        XQ : rows q, columns x
//   ST : rows s, columns t        S  : rows s, one column
// The dual x lattice has spacing dx = 2 pi / (n_p dp) and is centred,
// x_j = (j - n_p/2) dx. ST lattices reuse the q numbers for s and the x
// numbers for t.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "affq/errors.hpp"
#include "affq/fourier.hpp"

namespace affq {

enum class Domain { PQ, XQ, ST, S };

inline std::string to_string(Domain d) {
  switch (d) {
    case Domain::PQ:
      return "PQ";
    case Domain::XQ:
      return "XQ";
    case Domain::ST:
      return "ST";
    case Domain::S:
      return "S";
  }
  return "?";
}

inline Domain parse_domain(const std::string& s) {
  if (s == "PQ") return Domain::PQ;
  if (s == "XQ") return Domain::XQ;
  if (s == "ST") return Domain::ST;
  if (s == "S") return Domain::S;
  throw ParseError("unknown grid domain '" + s + "'");
}

/// Uniform periodic axis: n samples min + j step, period n step.
struct Axis {
  double min = 0.0;
  double step = 1.0;
  std::size_t n = 1;

  double at(std::size_t j) const { return min + static_cast<double>(j) * step; }
  double period() const { return step * static_cast<double>(n); }
};

struct GridSpec {
  double p_min = -16.0;
  double p_max = 16.0;
  double q_min = -8.0;
  double q_max = 8.0;
  std::size_t n_p = 256;
  std::size_t n_q = 256;

  void validate() const {
    auto pow2 = [](std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; };
    if (!pow2(n_p) || !pow2(n_q)) throw DomainMismatch("grid sizes must be powers of two and at least 8");
    if (!(p_max > p_min) || !(q_max > q_min)) throw DomainMismatch("grid extents must be positive");
  }

  double dp() const { return (p_max - p_min) / static_cast<double>(n_p); }
  double dq() const { return (q_max - q_min) / static_cast<double>(n_q); }
  double dx() const { return 2.0 * std::numbers::pi / (static_cast<double>(n_p) * dp()); }

  Axis p_axis() const { return {p_min, dp(), n_p}; }
  Axis q_axis() const { return {q_min, dq(), n_q}; }
  Axis x_axis() const { return {-static_cast<double>(n_p / 2) * dx(), dx(), n_p}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class GridFunction {
 public:
  GridFunction(GridSpec spec, Domain domain) : spec_(spec), domain_(domain) {
    spec_.validate();
    values_.assign(rows() * cols(), cplx(0.0));
  }

  /// Samples f in the domain's natural argument order: PQ f(p,q), XQ f(x,q),
  /// ST f(s,t), S f(s, 0).
  static GridFunction sample(const GridSpec& spec, Domain domain, const std::function<cplx(double, double)>& f) {
    GridFunction g(spec, domain);
    const Axis ra = g.row_axis(), ca = g.col_axis();
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) {
        const double rv = ra.at(r), cv = ca.at(c);
        switch (domain) {
          case Domain::PQ:
          case Domain::XQ:
            g(r, c) = f(cv, rv);
            break;
          case Domain::ST:
            g(r, c) = f(rv, cv);
            break;
          case Domain::S:
            g(r, c) = f(rv, 0.0);
            break;
        }
      }
    return g;
  }

  const GridSpec& spec() const noexcept { return spec_; }
  Domain domain() const noexcept { return domain_; }

  std::size_t rows() const { return spec_.n_q; }
  std::size_t cols() const { return domain_ == Domain::S ? 1 : spec_.n_p; }

  Axis row_axis() const { return spec_.q_axis(); }
  Axis col_axis() const {
    switch (domain_) {
      case Domain::PQ:
        return spec_.p_axis();
      case Domain::XQ:
      case Domain::ST:
        return spec_.x_axis();
      case Domain::S:
        break;
    }
    return {0.0, 1.0, 1};
  }

  cplx& operator()(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> row(std::size_t r) { return {values_.data() + r * cols(), cols()}; }
  std::span<const cplx> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }

  CVector column(std::size_t c) const {
    CVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(std::size_t c, std::span<const cplx> v) {
    for (std::size_t r = 0; r < rows(); ++r) (*this)(r, c) = v[r];
  }
  void set_row(std::size_t r, std::span<const cplx> v) { std::copy(v.begin(), v.end(), row(r).begin()); }

  double cell_area() const { return row_axis().step * col_axis().step; }

  /// Quadrature L2 norm.
  double norm() const {
    double acc = 0.0;
    for (const auto& v : values_) acc += std::norm(v);
    return std::sqrt(acc * cell_area());
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  void require_compatible(const GridFunction& o) const {
    if (o.domain_ != domain_ || !(o.spec_ == spec_)) throw DomainMismatch("grid functions live on different lattices");
  }

  GridFunction& operator+=(const GridFunction& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GridFunction& operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(cplx s, GridFunction a) { return a *= s; }

  /// Pointwise multiplication by m(row_coord, col_coord).
  GridFunction& multiply_by(const std::function<cplx(double, double)>& m) {
    const Axis ra = row_axis(), ca = col_axis();
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols(); ++c) (*this)(r, c) *= m(ra.at(r), ca.at(c));
    return *this;
  }

  GridFunction with_domain(Domain d) const {
    GridFunction g = *this;
    if ((d == Domain::S) != (domain_ == Domain::S)) throw DomainMismatch("cannot relabel between 1-D and 2-D grids");
    g.domain_ = d;
    return g;
  }

 private:
  GridSpec spec_;
  Domain domain_;
  CVector values_;
};

/// ||a - b|| / ||reference||, or ||a - b|| when the reference vanishes.
inline double relative_l2(const GridFunction& a, const GridFunction& b, const GridFunction& reference) {
  const double d = (a - b).norm();
  const double r = reference.norm();
  return r > 0.0 ? d / r : d;
}

/// d^order/d(column coordinate), row by row.
inline GridFunction derivative_cols(const GridFunction& g, int order, DerivativeScheme scheme) {
  GridFunction out = g;
  const double h = g.col_axis().step;
  const bool periodic = scheme == DerivativeScheme::Spectral;
  for (std::size_t r = 0; r < g.rows(); ++r) out.set_row(r, fourier::derivative(g.row(r), h, order, scheme, periodic));
  return out;
}

/// d^order/d(row coordinate), column by column.
inline GridFunction derivative_rows(const GridFunction& g, int order, DerivativeScheme scheme) {
  GridFunction out = g;
  const double h = g.row_axis().step;
  const bool periodic = scheme == DerivativeScheme::Spectral;
  for (std::size_t c = 0; c < g.cols(); ++c) out.set_column(c, fourier::derivative(g.column(c), h, order, scheme, periodic));
  return out;
}

/// F_p u(x, q) = (2 pi)^-1/2 int e^{-ipx} u(p, q) dp, discretised so that it
/// is exactly unitary between the quadrature norms of the PQ and XQ lattices.
inline GridFunction partial_fourier(const GridFunction& u) {
  if (u.domain() != Domain::PQ) throw DomainMismatch("partial_fourier expects a PQ grid function");
  const GridSpec& spec = u.spec();
  const Axis pa = spec.p_axis(), xa = spec.x_axis();
  const std::size_t n = spec.n_p;
  const double scale = pa.step / std::sqrt(2.0 * std::numbers::pi);
  // e^{-i p_k x_j} = e^{-i p_min x_j} e^{-i k dp x_min} e^{-2 pi i k j / n}
  CVector pre(n), post(n);
  for (std::size_t k = 0; k < n; ++k) pre[k] = std::polar(1.0, -static_cast<double>(k) * pa.step * xa.min);
  for (std::size_t j = 0; j < n; ++j) post[j] = scale * std::polar(1.0, -pa.min * xa.at(j));

  GridFunction out(spec, Domain::XQ);
  CVector buf(n);
  for (std::size_t r = 0; r < u.rows(); ++r) {
    auto row = u.row(r);
    for (std::size_t k = 0; k < n; ++k) buf[k] = row[k] * pre[k];
    CVector spec_row = fourier::forward(buf);
    for (std::size_t j = 0; j < n; ++j) spec_row[j] *= post[j];
    out.set_row(r, spec_row);
  }
  return out;
}

inline GridFunction inverse_partial_fourier(const GridFunction& v) {
  if (v.domain() != Domain::XQ) throw DomainMismatch("inverse_partial_fourier expects an XQ grid function");
  const GridSpec& spec = v.spec();
  const Axis pa = spec.p_axis(), xa = spec.x_axis();
  const std::size_t n = spec.n_p;
  const double scale = xa.step * static_cast<double>(n) / std::sqrt(2.0 * std::numbers::pi);
  CVector pre(n), post(n);
  for (std::size_t j = 0; j < n; ++j) pre[j] = std::polar(1.0, pa.min * xa.at(j));
  for (std::size_t k = 0; k < n; ++k) post[k] = scale * std::polar(1.0, static_cast<double>(k) * pa.step * xa.min);

  GridFunction out(spec, Domain::PQ);
  CVector buf(n);
  for (std::size_t r = 0; r < v.rows(); ++r) {
    auto row = v.row(r);
    for (std::size_t j = 0; j < n; ++j) buf[j] = row[j] * pre[j];
    CVector p_row = fourier::inverse(buf);
    for (std::size_t k = 0; k < n; ++k) p_row[k] *= post[k];
    out.set_row(r, p_row);
  }
  return out;
}

/// Raised-cosine window on the outer `fraction` of each axis.
inline GridFunction cosine_taper(const GridFunction& g, double fraction = 0.1) {
  auto window = [fraction](std::size_t i, std::size_t n) {
    if (n <= 1 || fraction <= 0.0) return 1.0;
    const double width = fraction * static_cast<double>(n - 1);
    const double d = static_cast<double>(std::min(i, n - 1 - i));
    if (d >= width) return 1.0;
    return 0.5 * (1.0 - std::cos(std::numbers::pi * d / width));
  };
  GridFunction out = g;
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) out(r, c) *= window(r, g.rows()) * window(c, g.cols());
  return out;
}

}  // namespace affq
