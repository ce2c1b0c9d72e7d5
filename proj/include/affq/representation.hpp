#pragma once

// Irreducible unitary representations of the affine group.
//
// The two infinite-dimensional ones, T_{Omega+} and T_{Omega-}, act on
// L2(R*, dy/|y|) by (T(g) f)(y) = e^{iby} f(ay). Functions are sampled on a
// logarithmic lattice y = sigma e^s with s uniform and periodic on [-S, S);
// the measure dy/|y| pulls back to ds, so dilations become shifts in s and the
// quadrature inner product is the plain lattice sum.
//
// On the lattice the generator is lhat_Z = alpha d_s + i beta y
// (= alpha d_s + i beta e^s on the upper half-line).

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "affq/errors.hpp"
#include "affq/fourier.hpp"
#include "affq/lie_aff.hpp"

namespace affq {

struct Lattice {
  double S = 8.0;
  std::size_t n = 4096;
  int sigma = 1;

  double step() const { return 2.0 * S / static_cast<double>(n); }
  double s(std::size_t j) const { return -S + static_cast<double>(j) * step(); }
  double y(std::size_t j) const { return sigma * std::exp(s(j)); }
  double period() const { return 2.0 * S; }

  void validate() const {
    if (sigma != 1 && sigma != -1) throw DomainMismatch("lattice sign must be +1 or -1");
    if (!(S > 0.0) || n < 16) throw DomainMismatch("lattice needs S > 0 and at least 16 points");
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;
};

class HalfLineFunction {
 public:
  explicit HalfLineFunction(Lattice lattice) : lattice_(lattice), values_(lattice.n, cplx(0.0)) { lattice_.validate(); }
  HalfLineFunction(Lattice lattice, CVector values) : lattice_(lattice), values_(std::move(values)) {
    lattice_.validate();
    if (values_.size() != lattice_.n) throw DomainMismatch("sample count does not match the lattice");
  }

  /// f given as a function of s.
  static HalfLineFunction sample(const Lattice& lattice, const std::function<cplx(double)>& f) {
    HalfLineFunction h(lattice);
    for (std::size_t j = 0; j < lattice.n; ++j) h.values_[j] = f(lattice.s(j));
    return h;
  }

  const Lattice& lattice() const noexcept { return lattice_; }
  int sigma() const noexcept { return lattice_.sigma; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx operator[](std::size_t j) const { return values_[j]; }
  cplx& operator[](std::size_t j) { return values_[j]; }

  /// Norm in L2(R*, dy/|y|) = L2(ds).
  double norm() const {
    double acc = 0.0;
    for (const auto& v : values_) acc += std::norm(v);
    return std::sqrt(acc * lattice_.step());
  }

  HalfLineFunction& operator+=(const HalfLineFunction& o) {
    require_same_lattice(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
  }
  HalfLineFunction& operator-=(const HalfLineFunction& o) {
    require_same_lattice(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
  }
  HalfLineFunction& operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend HalfLineFunction operator+(HalfLineFunction a, const HalfLineFunction& b) { return a += b; }
  friend HalfLineFunction operator-(HalfLineFunction a, const HalfLineFunction& b) { return a -= b; }
  friend HalfLineFunction operator*(cplx s, HalfLineFunction a) { return a *= s; }

  void require_same_lattice(const HalfLineFunction& o) const {
    if (!(o.lattice_ == lattice_)) throw DomainMismatch("half-line functions live on different lattices");
  }

 private:
  Lattice lattice_;
  CVector values_;
};

/// Trapezoid rule for int conj(f) g ds on the periodic lattice.
inline cplx inner_product(const HalfLineFunction& f, const HalfLineFunction& g) {
  f.require_same_lattice(g);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.lattice().n; ++j) acc += std::conj(f[j]) * g[j];
  return acc * f.lattice().step();
}

/// ||a - b|| / ||reference||.
inline double relative_l2(const HalfLineFunction& a, const HalfLineFunction& b, const HalfLineFunction& reference) {
  const double d = (a - b).norm();
  const double r = reference.norm();
  return r > 0.0 ? d / r : d;
}

enum class ReprKind { OmegaPlus, OmegaMinus, Character };

struct ReprChoice {
  ReprKind kind = ReprKind::OmegaPlus;
  int epsilon = 0;
  double lambda = 0.0;

  static ReprChoice omega_plus() { return {ReprKind::OmegaPlus, 0, 0.0}; }
  static ReprChoice omega_minus() { return {ReprKind::OmegaMinus, 0, 0.0}; }
  static ReprChoice character(int epsilon, double lambda) { return {ReprKind::Character, epsilon, lambda}; }
  static ReprChoice for_sign(int sigma) { return sigma > 0 ? omega_plus() : omega_minus(); }

  int sigma() const {
    if (kind == ReprKind::Character) throw DomainMismatch("characters do not act on half-line functions");
    return kind == ReprKind::OmegaPlus ? 1 : -1;
  }
};

struct WindowOptions {
  /// Largest tolerated fraction of L2 mass pushed out of the s-window by a shift.
  double mass_loss_tolerance = 1e-12;
};

/// Fraction of ||f||^2 that a shift g(s) = f(s + shift) moves out of [-S, S).
inline double shift_mass_loss(const HalfLineFunction& f, double shift) {
  const Lattice& lat = f.lattice();
  double total = 0.0, lost = 0.0;
  for (std::size_t j = 0; j < lat.n; ++j) {
    const double e = std::norm(f[j]);
    total += e;
    const double s = lat.s(j);
    if ((shift > 0.0 && s < -lat.S + shift) || (shift < 0.0 && s >= lat.S + shift)) lost += e;
  }
  return total > 0.0 ? lost / total : 0.0;
}

namespace detail {
inline HalfLineFunction shifted(const HalfLineFunction& f, double shift, const WindowOptions& options) {
  const Lattice& lat = f.lattice();
  const double loss = std::abs(shift) >= lat.period() ? 1.0 : shift_mass_loss(f, shift);
  if (loss > options.mass_loss_tolerance)
    throw WindowError("shift by " + std::to_string(shift) + " leaves the s-window (mass loss " +
                          std::to_string(loss) + ")",
                      loss);
  return {lat, fourier::spectral_shift(f.values(), shift, lat.period())};
}

/// Multiplies by e^{i b y} on the lattice.
inline void apply_phase(HalfLineFunction& f, double b) {
  const Lattice& lat = f.lattice();
  for (std::size_t j = 0; j < lat.n; ++j) f[j] *= std::polar(1.0, b * lat.y(j));
}

inline void require_sign(const ReprChoice& choice, const HalfLineFunction& f) {
  if (choice.sigma() != f.sigma())
    throw DomainMismatch("representation acts on the other half-line than the function's lattice");
}
}  // namespace detail

/// (T(g) f)(y) = e^{iby} f(ay): a shift by ln a in s, then a pointwise phase.
inline HalfLineFunction rep_apply(const ReprChoice& choice, const GroupElement<double>& g, const HalfLineFunction& f,
                                  const WindowOptions& options = {}) {
  detail::require_sign(choice, f);
  HalfLineFunction out = detail::shifted(f, std::log(g.a()), options);
  detail::apply_phase(out, g.b());
  return out;
}

/// T(exp tZ) f, evaluated in closed form: shift by t alpha, phase with
/// b = beta t (e^{t alpha} - 1)/(t alpha).
inline HalfLineFunction rep_one_param(const LieAlgebraElement<double>& z, double t, const HalfLineFunction& f,
                                      const WindowOptions& options = {}) {
  HalfLineFunction out = detail::shifted(f, t * z.alpha, options);
  detail::apply_phase(out, z.beta * t * exprel(t * z.alpha));
  return out;
}

/// lhat_Z f = alpha d_s f + i beta y f.
inline HalfLineFunction apply_lhat(const LieAlgebraElement<double>& z, const HalfLineFunction& f,
                                   DerivativeScheme scheme = DerivativeScheme::Spectral) {
  const Lattice& lat = f.lattice();
  HalfLineFunction out(lat);
  if (z.alpha != 0.0) {
    CVector d = fourier::derivative(f.values(), lat.step(), 1, scheme, true);
    for (std::size_t j = 0; j < lat.n; ++j) out[j] = z.alpha * d[j];
  }
  if (z.beta != 0.0)
    for (std::size_t j = 0; j < lat.n; ++j) out[j] += cplx(0.0, z.beta * lat.y(j)) * f[j];
  return out;
}

enum class EvolutionBackend { Characteristics, RK4 };

struct EvolveOptions {
  EvolutionBackend backend = EvolutionBackend::Characteristics;
  /// Derivative used by the RK4 backend; periodic in s.
  DerivativeScheme scheme = DerivativeScheme::FiniteDifference8;
  WindowOptions window{};
};

/// Stability bound for classical RK4 on the imaginary axis.
inline constexpr double rk4_stability_limit = 2.8284271247461903;

/// Bound on |dt| * spectral radius of the discretized lhat_Z.
inline double rk4_courant(const LieAlgebraElement<double>& z, const Lattice& lat, double dt, DerivativeScheme scheme) {
  const double d_radius = scheme == DerivativeScheme::Spectral
                              ? std::numbers::pi / lat.step()
                              : fourier::fd8().spectral_radius() / lat.step();
  const double y_max = std::exp(lat.s(lat.n - 1));
  return std::abs(dt) * (std::abs(z.alpha) * d_radius + std::abs(z.beta) * y_max);
}

/// Integrates d_tau u = lhat_Z u, u(0) = f, up to tau = t.
///
/// Characteristics: u(t, s) = exp(i beta sigma e^s int_0^t e^{alpha tau} dtau) f(s + alpha t),
/// with the phase integral by `steps` panels of 4-point Gauss-Legendre.
/// RK4: `steps` classical Runge-Kutta steps on the discretized operator.
inline HalfLineFunction evolve_cauchy(const LieAlgebraElement<double>& z, double t, const HalfLineFunction& f, int steps,
                                      const EvolveOptions& options = {}) {
  if (steps < 1) throw std::invalid_argument("evolve_cauchy needs at least one step");
  const Lattice& lat = f.lattice();
  if (t == 0.0) return f;

  if (options.backend == EvolutionBackend::Characteristics) {
    static constexpr std::array<double, 4> nodes{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                                 0.8611363115940526};
    static constexpr std::array<double, 4> weights{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                   0.3478548451374538};
    const double h = t / steps;
    // Constant integrand when alpha = 0: skip the sum so no roundoff accumulates.
    double integral = z.alpha == 0.0 ? t : 0.0;
    for (int k = 0; z.alpha != 0.0 && k < steps; ++k) {
      const double mid = (k + 0.5) * h;
      for (std::size_t g = 0; g < nodes.size(); ++g)
        integral += 0.5 * h * weights[g] * std::exp(z.alpha * (mid + 0.5 * h * nodes[g]));
    }
    HalfLineFunction out = detail::shifted(f, z.alpha * t, options.window);
    detail::apply_phase(out, z.beta * integral);
    return out;
  }

  const double dt = t / steps;
  const double courant = rk4_courant(z, lat, dt, options.scheme);
  if (courant > rk4_stability_limit)
    throw CflViolation("RK4 step violates the stability bound (courant " + std::to_string(courant) + " > 2.83)",
                       courant);
  // Same operator as apply_lhat, with i beta y tabulated once.
  CVector potential(lat.n);
  for (std::size_t j = 0; j < lat.n; ++j) potential[j] = cplx(0.0, z.beta * lat.y(j));
  auto rhs = [&](const CVector& u, CVector& out) {
    if (z.alpha != 0.0) {
      out = fourier::derivative(u, lat.step(), 1, options.scheme, true);
      for (std::size_t j = 0; j < lat.n; ++j) out[j] = z.alpha * out[j] + potential[j] * u[j];
    } else {
      for (std::size_t j = 0; j < lat.n; ++j) out[j] = potential[j] * u[j];
    }
  };
  CVector u(f.values().begin(), f.values().end()), k1(lat.n), k2(lat.n), k3(lat.n), k4(lat.n), tmp(lat.n);
  for (int k = 0; k < steps; ++k) {
    rhs(u, k1);
    for (std::size_t j = 0; j < lat.n; ++j) tmp[j] = u[j] + 0.5 * dt * k1[j];
    rhs(tmp, k2);
    for (std::size_t j = 0; j < lat.n; ++j) tmp[j] = u[j] + 0.5 * dt * k2[j];
    rhs(tmp, k3);
    for (std::size_t j = 0; j < lat.n; ++j) tmp[j] = u[j] + dt * k3[j];
    rhs(tmp, k4);
    for (std::size_t j = 0; j < lat.n; ++j) u[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return {lat, std::move(u)};
}

/// ||(T(exp hZ) f - T(exp -hZ) f)/(2h) - lhat_Z f|| / ||f||.
inline double check_generator(const LieAlgebraElement<double>& z, const HalfLineFunction& f, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("check_generator needs h > 0");
  const double f_norm = f.norm();
  if (f_norm == 0.0) return 0.0;
  HalfLineFunction diff = rep_one_param(z, h, f) - rep_one_param(z, -h, f);
  diff *= cplx(1.0 / (2.0 * h));
  return (diff - apply_lhat(z, f)).norm() / f_norm;
}

/// U^eps_lambda(a, b) = |a|^{i lambda} (sgn a)^eps on the full affine group.
inline cplx character_apply(int epsilon, double lambda, double a, double /*b*/) {
  if (a == 0.0) throw InvalidGroupElement("character needs a != 0");
  if (epsilon != 0 && epsilon != 1) throw std::invalid_argument("epsilon must be 0 or 1");
  const cplx modulus_part = std::polar(1.0, lambda * std::log(std::abs(a)));
  return (epsilon == 1 && a < 0.0) ? -modulus_part : modulus_part;
}

}  // namespace affq
