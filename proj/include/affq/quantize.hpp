#pragma once

// Quantized generators of aff(R).
//
//   ell_Z u     = i Ztilde * u                  (star product, PQ grids)
//   lhat_Z      = F_p ell_Z F_p^-1
//               = alpha (d_q / 2 - d_x) + i beta e^{q - x/2}   on XQ grids
//               = alpha d_s + i beta e^s                        after s = q - x/2, t = q + x/2
//
// ell_Z is evaluated through the pseudo-differential series
//   i sum_r (1/r!) (1/2i)^r P^r(Ztilde, u),
//   P^0 = Ztilde u,  P^1 = alpha u_q - beta e^q u_p,  P^r = (-1)^r beta e^q d_p^r u  (r >= 2),
// truncated at order R, with spectral p-derivatives.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "affq/errors.hpp"
#include "affq/grid.hpp"
#include "affq/lie_aff.hpp"
#include "affq/symbol.hpp"

namespace affq {

/// lhat_Z for Z = alpha X + beta Y; linear in (alpha, beta).
struct GeneratorOp {
  double alpha = 0.0;
  double beta = 0.0;

  GeneratorOp() = default;
  GeneratorOp(double a, double b) : alpha(a), beta(b) {}
  explicit GeneratorOp(const LieAlgebraElement<double>& z) : alpha(z.alpha), beta(z.beta) {}

  friend GeneratorOp operator+(const GeneratorOp& a, const GeneratorOp& b) {
    return {a.alpha + b.alpha, a.beta + b.beta};
  }
  friend GeneratorOp operator*(double s, const GeneratorOp& a) { return {s * a.alpha, s * a.beta}; }
};

struct SeriesOptions {
  /// Stop once a term falls below stop_tolerance * ||u|| (after the first-order term).
  double stop_tolerance = 1e-14;
  /// Terms above divergence_limit * ||u|| mean the grid cannot resolve the series.
  double divergence_limit = 1e8;
};

struct SeriesResult {
  GridFunction value;
  /// Highest order actually summed.
  int last_order = 0;
  /// ||term_r|| / ||u|| for r = 0..last_order.
  std::vector<double> term_norms;
};

/// Truncated series for ell_Z u with diagnostics. R is the maximal order.
inline SeriesResult ell_z_series(const LieAlgebraElement<double>& z, const GridFunction& u, int max_order,
                                 const SeriesOptions& options = {}) {
  if (u.domain() != Domain::PQ) throw DomainMismatch("ell_z expects a PQ grid function");
  if (max_order < 1) throw std::invalid_argument("truncation order must be at least 1");

  const GridSpec& spec = u.spec();
  const Axis pa = spec.p_axis(), qa = spec.q_axis();
  const double u_norm = u.norm();
  SeriesResult result{GridFunction(spec, Domain::PQ), 0, {}};
  if (u_norm == 0.0) {
    result.term_norms.push_back(0.0);
    return result;
  }

  if (z.beta != 0.0) {
    // Roundoff in the top resolved p-mode is amplified by (k_max/2)^r / r! e^{q_max}.
    const double k_max = std::numbers::pi / pa.step;
    double gain = 1.0, worst = 1.0;
    for (int r = 1; r <= max_order; ++r) {
      gain *= 0.5 * k_max / r;
      worst = std::max(worst, gain);
    }
    worst *= std::abs(z.beta) * std::exp(qa.at(qa.n - 1));
    if (worst * std::numeric_limits<double>::epsilon() > 1.0)
      throw SeriesDivergence("truncation order " + std::to_string(max_order) + " is not resolved by the p lattice");
  }

  const cplx i(0.0, 1.0);
  auto eq = [](double q) { return std::exp(q); };

  // r = 0: i (alpha p + beta e^q) u
  GridFunction term = u;
  term.multiply_by([&](double q, double p) { return i * (z.alpha * p + z.beta * eq(q)); });
  result.value += term;
  result.term_norms.push_back(term.norm() / u_norm);

  // r = 1: (1/2)(alpha u_q - beta e^q u_p)
  {
    GridFunction t1 = derivative_rows(u, 1, DerivativeScheme::Spectral);
    t1 *= cplx(0.5 * z.alpha);
    GridFunction up = derivative_cols(u, 1, DerivativeScheme::Spectral);
    up.multiply_by([&](double q, double) { return -0.5 * z.beta * eq(q); });
    t1 += up;
    result.value += t1;
    result.term_norms.push_back(t1.norm() / u_norm);
    result.last_order = 1;
  }
  if (z.beta == 0.0) return result;

  // r >= 2: i (1/r!) (i/2)^r beta e^q d_p^r u, from one FFT per row.
  std::vector<CVector> spectra(u.rows());
  for (std::size_t r = 0; r < u.rows(); ++r) spectra[r] = fourier::forward(u.row(r));
  const auto k = fourier::wavenumbers(spec.n_p, pa.period());

  cplx weight = i;  // i (i/2)^r / r!
  for (int order = 2; order <= max_order; ++order) {
    if (order == 2) weight *= cplx(0.0, 0.5) * cplx(0.0, 0.5) / 2.0;
    else weight *= cplx(0.0, 0.5) / static_cast<double>(order);

    GridFunction tr(spec, Domain::PQ);
    CVector buf(spec.n_p);
    for (std::size_t r = 0; r < u.rows(); ++r) {
      for (std::size_t j = 0; j < spec.n_p; ++j) {
        const bool nyquist = j == spec.n_p / 2;
        buf[j] = nyquist ? cplx(0.0) : spectra[r][j] * std::pow(i * k[j], order);
      }
      CVector d = fourier::inverse(buf);
      const cplx factor = weight * z.beta * eq(qa.at(r));
      for (std::size_t j = 0; j < spec.n_p; ++j) d[j] *= factor;
      tr.set_row(r, d);
    }
    const double tn = tr.norm() / u_norm;
    if (tn > options.divergence_limit)
      throw SeriesDivergence("pseudo-differential series diverges at order " + std::to_string(order));
    result.value += tr;
    result.term_norms.push_back(tn);
    result.last_order = order;
    if (tn < options.stop_tolerance) break;
  }
  return result;
}

/// ell_Z u truncated at order R.
inline GridFunction ell_z_truncated(const LieAlgebraElement<double>& z, const GridFunction& u, int max_order) {
  return ell_z_series(z, u, max_order).value;
}

/// alpha (d_q v / 2 - d_x v) + i beta e^{q - x/2} v on an XQ grid.
inline GridFunction apply_generator(const GeneratorOp& op, const GridFunction& v,
                                    DerivativeScheme scheme = DerivativeScheme::Spectral) {
  if (v.domain() != Domain::XQ) throw DomainMismatch("apply_generator expects an XQ grid function");
  GridFunction out(v.spec(), Domain::XQ);
  if (op.alpha != 0.0) {
    GridFunction dq = derivative_rows(v, 1, scheme);
    GridFunction dx = derivative_cols(v, 1, scheme);
    dq *= cplx(0.5 * op.alpha);
    dx *= cplx(op.alpha);
    out += dq;
    out -= dx;
  }
  if (op.beta != 0.0) {
    GridFunction m = v;
    m.multiply_by([&](double q, double x) { return cplx(0.0, op.beta) * std::exp(q - 0.5 * x); });
    out += m;
  }
  return out;
}

/// alpha d_s + i beta e^s, acting along s on ST or S grids.
inline GridFunction apply_s_generator(const GeneratorOp& op, const GridFunction& w,
                                      DerivativeScheme scheme = DerivativeScheme::Spectral) {
  if (w.domain() != Domain::ST && w.domain() != Domain::S)
    throw DomainMismatch("apply_s_generator expects an ST or S grid function");
  GridFunction out(w.spec(), w.domain());
  if (op.alpha != 0.0) {
    GridFunction ds = derivative_rows(w, 1, scheme);
    ds *= cplx(op.alpha);
    out += ds;
  }
  if (op.beta != 0.0) {
    GridFunction m = w;
    m.multiply_by([&](double s, double) { return cplx(0.0, op.beta) * std::exp(s); });
    out += m;
  }
  return out;
}

struct ResampleOptions {
  /// Largest tolerated spectral energy fraction in the top eighth of frequencies.
  double band_limit_tolerance = 1e-10;
};

/// Resamples v(x, q) to u(s, t) = v(t - s, (s + t)/2) with two spectral shears:
/// first along q by x/2 per column, then along x by -s per row. Shears that are
/// whole lattice steps reduce to index rotations.
inline GridFunction to_s_coordinates(const GridFunction& v, const ResampleOptions& options = {}) {
  if (v.domain() != Domain::XQ) throw DomainMismatch("to_s_coordinates expects an XQ grid function");
  const Axis qa = v.row_axis(), xa = v.col_axis();

  // Each shear checks the lines it interpolates, with energies pooled over the
  // whole grid so that lines at roundoff level do not count.
  auto check = [&](double high, double total) {
    const double fraction = total > 0.0 ? high / total : 0.0;
    if (fraction > options.band_limit_tolerance)
      throw InterpolationError("grid data is not band-limited enough for spectral resampling (high-frequency fraction " +
                               std::to_string(fraction) + ")");
  };

  // w(x, s) = v(x, s + x/2)
  double high = 0.0, total = 0.0;
  GridFunction w = v;
  for (std::size_t c = 0; c < v.cols(); ++c) {
    const CVector col = v.column(c);
    const auto [h, t] = fourier::high_frequency_energy(col);
    high += h;
    total += t;
    w.set_column(c, fourier::spectral_shift(col, 0.5 * xa.at(c), qa.period()));
  }
  check(high, total);

  // u(s, t) = w(t - s, s)
  high = total = 0.0;
  GridFunction u = w.with_domain(Domain::ST);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const auto [h, t] = fourier::high_frequency_energy(w.row(r));
    high += h;
    total += t;
    u.set_row(r, fourier::spectral_shift(w.row(r), -qa.at(r), xa.period()));
  }
  check(high, total);
  return u;
}

/// The 1-D S grid at column t_index of an ST grid.
inline GridFunction slice_t(const GridFunction& u, std::size_t t_index) {
  if (u.domain() != Domain::ST) throw DomainMismatch("slice_t expects an ST grid function");
  GridFunction out(u.spec(), Domain::S);
  for (std::size_t r = 0; r < u.rows(); ++r) out(r, 0) = u(r, t_index);
  return out;
}

/// ||F_p ell_Z u - lhat_Z F_p u|| / ||u|| with ell_Z truncated at order R.
inline double verify_conjugation(const LieAlgebraElement<double>& z, const GridFunction& u, int max_order,
                                 DerivativeScheme scheme = DerivativeScheme::Spectral) {
  const double u_norm = u.norm();
  if (u_norm == 0.0) return 0.0;
  const GridFunction lhs = partial_fourier(ell_z_truncated(z, u, max_order));
  const GridFunction rhs = apply_generator(GeneratorOp(z), partial_fourier(u), scheme);
  return (lhs - rhs).norm() / u_norm;
}

/// First-order operator d * d/ds + m(s) with constant d and m(s) = sum_k c_k e^{ks},
/// stored exactly as a symbol in which q plays the role of s.
struct SOperator {
  GaussianRational d;
  ExpPolySymbol multiplier;

  friend bool operator==(const SOperator&, const SOperator&) = default;
};

/// Exact coefficients of alpha d_s + i beta e^s.
template <class T>
SOperator s_generator_symbol(const LieAlgebraElement<T>& z) {
  SOperator op{GaussianRational(Rational(z.alpha)), {}};
  op.multiplier.add_term(0, 1, GaussianRational(Rational(0), Rational(z.beta)));
  return op;
}

/// [A, B] for constant-coefficient derivative parts: a_d m_B' - b_d m_A'.
inline SOperator commutator(const SOperator& a, const SOperator& b) {
  ExpPolySymbol m = a.d * derive(b.multiplier, Var::q) - b.d * derive(a.multiplier, Var::q);
  return {GaussianRational(), std::move(m)};
}

}  // namespace affq
