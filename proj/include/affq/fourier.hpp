#pragma once

// One-dimensional spectral and finite-difference kernels on uniform lattices.
// Spectral kernels treat the samples as one period of a band-limited function.

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace affq {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

enum class DerivativeScheme { Spectral, FiniteDifference8 };

namespace fourier {

/// Per-thread engine; Eigen caches twiddle tables per size.
inline Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

inline CVector forward(std::span<const cplx> in) {
  CVector src(in.begin(), in.end()), out;
  engine().fwd(out, src);
  return out;
}

/// Inverse DFT including the 1/n factor.
inline CVector inverse(std::span<const cplx> in) {
  CVector src(in.begin(), in.end()), out;
  engine().inv(out, src);
  return out;
}

/// Angular wavenumbers of the DFT bins for a period `length`; bin n/2 is the Nyquist bin.
inline std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / length;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<long long>(j);
    const auto nn = static_cast<long long>(n);
    k[j] = dk * static_cast<double>(j < n / 2 ? jj : jj - nn);
  }
  return k;
}

/// Multiplies the spectrum by (ik)^order. The Nyquist bin is dropped for odd orders.
inline void apply_derivative_symbol(CVector& spectrum, double length, int order) {
  const std::size_t n = spectrum.size();
  const auto k = wavenumbers(n, length);
  for (std::size_t j = 0; j < n; ++j) {
    if (order % 2 != 0 && n % 2 == 0 && j == n / 2) {
      spectrum[j] = 0.0;
      continue;
    }
    spectrum[j] *= std::pow(cplx(0.0, k[j]), order);
  }
}

inline CVector spectral_derivative(std::span<const cplx> f, double length, int order = 1) {
  if (order == 0) return CVector(f.begin(), f.end());
  CVector spec = forward(f);
  apply_derivative_symbol(spec, length, order);
  return inverse(spec);
}

/// g(s) = f(s + shift) by band-limited interpolation. Shifts that are whole
/// multiples of the spacing (to 1e-12 relative) are exact index rotations.
inline CVector spectral_shift(std::span<const cplx> f, double shift, double length) {
  const std::size_t n = f.size();
  const double h = length / static_cast<double>(n);
  const double steps = shift / h;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) <= 1e-12 * std::max(1.0, std::abs(steps))) {
    const auto nn = static_cast<long long>(n);
    const long long m = ((static_cast<long long>(rounded) % nn) + nn) % nn;
    CVector g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = f[(j + static_cast<std::size_t>(m)) % n];
    return g;
  }
  CVector spec = forward(f);
  const auto k = wavenumbers(n, length);
  for (std::size_t j = 0; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2)
      spec[j] *= std::cos(k[j] * shift);  // symmetric split of the Nyquist mode
    else
      spec[j] *= std::polar(1.0, k[j] * shift);
  }
  return inverse(spec);
}

/// (energy in the top `band` fraction of frequencies, total energy).
inline std::pair<double, double> high_frequency_energy(std::span<const cplx> f, double band = 0.125) {
  const CVector spec = forward(f);
  const std::size_t n = spec.size();
  const double cutoff = (1.0 - band) * static_cast<double>(n / 2);
  double total = 0.0, high = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double e = std::norm(spec[j]);
    total += e;
    const double idx = static_cast<double>(j < n / 2 ? j : n - j);
    if (idx >= cutoff) high += e;
  }
  return {high, total};
}

inline double high_frequency_fraction(std::span<const cplx> f, double band = 0.125) {
  const auto [high, total] = high_frequency_energy(f, band);
  return total > 0.0 ? high / total : 0.0;
}

/// Fornberg's recursion: weights w[d][j] for the d-th derivative at x0 from
/// samples at nodes[j], for d = 0..max_order.
inline std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order) {
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(nodes.size(), 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Eighth-order first-derivative stencils on a 9-point window. Non-periodic
/// data uses the window shifted inside the lattice near the ends; periodic
/// data always uses the centred stencil with wrap-around.
class FiniteDifference8 {
 public:
  static constexpr int width = 9;

  FiniteDifference8() {
    for (int offset = 0; offset < width; ++offset) {
      std::vector<double> nodes(width);
      for (int j = 0; j < width; ++j) nodes[j] = static_cast<double>(j - offset);
      weights_[offset] = fornberg_weights(0.0, nodes, 1)[1];
    }
  }

  /// Stencil for evaluation at node `offset` of the 9-point window (4 is centred).
  const std::vector<double>& stencil(int offset) const { return weights_[offset]; }

  CVector derivative(std::span<const cplx> f, double h, bool periodic) const {
    const auto n = static_cast<long long>(f.size());
    if (n < width) throw std::invalid_argument("finite-difference derivative needs at least 9 samples");
    CVector out(f.size());
    if (periodic) {
      const auto& w = weights_[4];
      const double inv_h = 1.0 / h;
      for (long long i = 0; i < n; ++i) {
        cplx acc = 0.0;
        if (i >= 4 && i < n - 4) {
          const cplx* base = f.data() + (i - 4);
          for (int j = 0; j < width; ++j) acc += w[j] * base[j];
        } else {
          for (int j = 0; j < width; ++j) acc += w[j] * f[static_cast<std::size_t>(((i + j - 4) % n + n) % n)];
        }
        out[static_cast<std::size_t>(i)] = acc * inv_h;
      }
      return out;
    }
    for (long long i = 0; i < n; ++i) {
      cplx acc = 0.0;
      const long long start = std::clamp(i - 4, 0LL, n - width);
      const auto& w = weights_[static_cast<std::size_t>(i - start)];
      for (int j = 0; j < width; ++j) acc += w[j] * f[static_cast<std::size_t>(start + j)];
      out[static_cast<std::size_t>(i)] = acc / h;
    }
    return out;
  }

  /// max_theta |sum_j w_j e^{i j theta}| for the centred stencil, in units of 1/h.
  double spectral_radius() const {
    double best = 0.0;
    const auto& w = weights_[4];
    for (int s = 0; s <= 2000; ++s) {
      const double theta = std::numbers::pi * s / 2000.0;
      cplx acc = 0.0;
      for (int j = 0; j < width; ++j) acc += w[j] * std::polar(1.0, (j - 4) * theta);
      best = std::max(best, std::abs(acc));
    }
    return best;
  }

 private:
  std::array<std::vector<double>, width> weights_;
};

inline const FiniteDifference8& fd8() {
  static const FiniteDifference8 instance;
  return instance;
}

/// d^order/ds^order of samples with spacing h. Finite differences repeat the first-derivative stencil.
inline CVector derivative(std::span<const cplx> f, double h, int order, DerivativeScheme scheme, bool periodic) {
  if (scheme == DerivativeScheme::Spectral) return spectral_derivative(f, h * static_cast<double>(f.size()), order);
  CVector out(f.begin(), f.end());
  for (int o = 0; o < order; ++o) out = fd8().derivative(out, h, periodic);
  return out;
}

}  // namespace fourier
}  // namespace affq
