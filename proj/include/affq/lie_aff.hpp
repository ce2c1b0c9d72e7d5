#pragma once

// The Lie algebra aff(R) = span{X, Y}, [X,Y] = Y, its connected group
// Aff0(R) = {(a, b) : a > 0} acting on the line by t -> a t + b, the coadjoint
// action on aff(R)* and the orbit data.
//
// Every type is a template over the scalar: `Rational` gives the exact path used
// in property tests, `double` the floating path used by the grid pipeline.
// Transcendental maps (exp_group, coadjoint_exp_act) are floating only.
//
// Coadjoint coordinates are called x_coad / y_coad in code, to keep them apart
// from the Fourier-dual variable x used by the quantized operators.

#include <array>
#include <cmath>
#include <string>

#include "affq/errors.hpp"
#include "affq/rational.hpp"
#include "affq/symbol.hpp"

namespace affq {

template <class T>
using Matrix2 = std::array<std::array<T, 2>, 2>;

/// alpha X + beta Y.
template <class T>
struct LieAlgebraElement {
  T alpha{0};
  T beta{0};

  LieAlgebraElement& operator+=(const LieAlgebraElement& o) {
    alpha += o.alpha;
    beta += o.beta;
    return *this;
  }
  friend LieAlgebraElement operator+(LieAlgebraElement a, const LieAlgebraElement& b) { return a += b; }
  friend LieAlgebraElement operator-(const LieAlgebraElement& a, const LieAlgebraElement& b) {
    return {a.alpha - b.alpha, a.beta - b.beta};
  }
  friend LieAlgebraElement operator*(const T& s, const LieAlgebraElement& a) { return {s * a.alpha, s * a.beta}; }
  friend bool operator==(const LieAlgebraElement&, const LieAlgebraElement&) = default;
};

template <class T = double>
LieAlgebraElement<T> generator_x() {
  return {T(1), T(0)};
}
template <class T = double>
LieAlgebraElement<T> generator_y() {
  return {T(0), T(1)};
}

/// [Z, T] = (alpha1 beta2 - alpha2 beta1) Y.
template <class T>
LieAlgebraElement<T> bracket(const LieAlgebraElement<T>& z, const LieAlgebraElement<T>& t) {
  return {T(0), z.alpha * t.beta - t.alpha * z.beta};
}

/// Matrix of ad_U on the basis (X, Y); column j is the image of the j-th basis vector.
template <class T>
Matrix2<T> ad_matrix(const LieAlgebraElement<T>& u) {
  // ad_U X = -beta Y, ad_U Y = alpha Y
  return {{{T(0), T(0)}, {-u.beta, u.alpha}}};
}

/// The affine map t -> a t + b with a > 0.
template <class T>
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(T a, T b) : a_(std::move(a)), b_(std::move(b)) {
    if (!(a_ > T(0))) throw InvalidGroupElement("group element needs a > 0");
  }

  static GroupElement identity() { return {}; }

  const T& a() const noexcept { return a_; }
  const T& b() const noexcept { return b_; }

  /// (a1,b1)(a2,b2) = (a1 a2, a1 b2 + b1): apply the right factor first.
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return {g.a_ * h.a_, g.a_ * h.b_ + g.b_};
  }

  GroupElement inverse() const { return {T(1) / a_, -b_ / a_}; }

  /// Image of a point of the line.
  T operator()(const T& t) const { return a_ * t + b_; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  T a_{1};
  T b_{0};
};

/// Matrix of Ad(g) on the basis (X, Y): Ad(g)(alpha, beta) = (alpha, a beta - b alpha).
template <class T>
Matrix2<T> adjoint_matrix(const GroupElement<T>& g) {
  return {{{T(1), T(0)}, {-g.b(), g.a()}}};
}

/// F = x_coad X* + y_coad Y*.
template <class T>
struct CoadjointPoint {
  T x_coad{0};
  T y_coad{0};

  friend bool operator==(const CoadjointPoint&, const CoadjointPoint&) = default;
};

/// <F, Z>.
template <class T>
T pairing(const CoadjointPoint<T>& f, const LieAlgebraElement<T>& z) {
  return f.x_coad * z.alpha + f.y_coad * z.beta;
}

/// K(g)F, defined by <K(g)F, Z> = <F, Ad(g^-1) Z>: F' = Ad(g^-1)^T F.
template <class T>
CoadjointPoint<T> coadjoint_act(const GroupElement<T>& g, const CoadjointPoint<T>& f) {
  const Matrix2<T> m = adjoint_matrix(g.inverse());
  return {m[0][0] * f.x_coad + m[1][0] * f.y_coad, m[0][1] * f.x_coad + m[1][1] * f.y_coad};
}

enum class OrbitKind { Point, UpperHalfPlane, LowerHalfPlane };

/// Orbit label; lambda is meaningful only for point orbits.
template <class T>
struct OrbitId {
  OrbitKind kind{OrbitKind::Point};
  T lambda{0};

  friend bool operator==(const OrbitId& a, const OrbitId& b) {
    if (a.kind != b.kind) return false;
    return a.kind != OrbitKind::Point || a.lambda == b.lambda;
  }
};

inline std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::Point:
      return "PointOrbit";
    case OrbitKind::UpperHalfPlane:
      return "UpperHalfPlane";
    case OrbitKind::LowerHalfPlane:
      return "LowerHalfPlane";
  }
  return "?";
}

/// |y| <= tolerance is a point orbit. Exact (tolerance 0) by default.
template <class T>
OrbitId<T> classify_orbit(const CoadjointPoint<T>& f, const T& tolerance = T(0)) {
  const T& y = f.y_coad;
  if (y <= tolerance && -y <= tolerance) return {OrbitKind::Point, f.x_coad};
  return {y > T(0) ? OrbitKind::UpperHalfPlane : OrbitKind::LowerHalfPlane, T(0)};
}

/// (e^x - 1)/x, accurate through x -> 0.
inline double exprel(double x) {
  if (std::abs(x) < 1e-8) return 1.0 + x * (0.5 + x / 6.0);
  return std::expm1(x) / x;
}

/// exp of alpha X + beta Y, i.e. of the matrix [[alpha, beta], [0, 0]].
inline GroupElement<double> exp_group(const LieAlgebraElement<double>& z) {
  return {std::exp(z.alpha), z.beta * exprel(z.alpha)};
}

/// K(exp U)F through the closed form of exp(-ad_U) = [[1, 0], [L, e^-alpha]],
/// L = beta (1 - e^-alpha)/alpha.
inline CoadjointPoint<double> coadjoint_exp_act(const LieAlgebraElement<double>& u,
                                                const CoadjointPoint<double>& f) {
  const double l = u.beta * exprel(-u.alpha);
  return {f.x_coad + l * f.y_coad, std::exp(-u.alpha) * f.y_coad};
}

/// Hamiltonian symbol of Z on the upper orbit in Darboux coordinates: alpha p + beta e^q.
template <class T>
ExpPolySymbol hamiltonian(const LieAlgebraElement<T>& z) {
  ExpPolySymbol h;
  h.add_term(1, 0, GaussianRational(Rational(z.alpha)));
  h.add_term(0, 1, GaussianRational(Rational(z.beta)));
  return h;
}

/// omega_F(xi_Z, xi_T) = <F, [Z, T]>; only defined off the point orbits.
template <class T>
T kirillov_form(const CoadjointPoint<T>& f, const LieAlgebraElement<T>& z, const LieAlgebraElement<T>& t) {
  if (f.y_coad == T(0)) throw DegenerateOrbit("Kirillov form is degenerate on a point orbit (y = 0)");
  return pairing(f, bracket(z, t));
}

/// (dp, dq) components of xi_Z = alpha d/dq - beta e^q d/dp at (p, q).
inline std::array<double, 2> hamiltonian_vector_field(const LieAlgebraElement<double>& z, double /*p*/, double q) {
  return {-z.beta * std::exp(q), z.alpha};
}

/// Matrix of the Kirillov form in (p, q) coordinates at F = p X* + e^q Y*,
/// recovered from its values on xi_X, xi_Y. Equals [[0, 1], [-1, 0]] (dp ^ dq)
/// everywhere.
inline Matrix2<double> kirillov_matrix_darboux(double p, double q) {
  const CoadjointPoint<double> f{p, std::exp(q)};
  const auto x = generator_x<double>();
  const auto y = generator_y<double>();
  // Frame J = [xi_X xi_Y] (columns) and Gram matrix G_ab = omega(xi_a, xi_b).
  const auto vx = hamiltonian_vector_field(x, p, q);
  const auto vy = hamiltonian_vector_field(y, p, q);
  const double j00 = vx[0], j10 = vx[1], j01 = vy[0], j11 = vy[1];
  const double det = j00 * j11 - j01 * j10;
  const Matrix2<double> jinv{{{j11 / det, -j01 / det}, {-j10 / det, j00 / det}}};
  const Matrix2<double> gram{{{kirillov_form(f, x, x), kirillov_form(f, x, y)},
                              {kirillov_form(f, y, x), kirillov_form(f, y, y)}}};
  // W = J^-T G J^-1
  Matrix2<double> w{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += jinv[a][r] * gram[a][b] * jinv[b][c];
      w[r][c] = acc;
    }
  return w;
}

}  // namespace affq
