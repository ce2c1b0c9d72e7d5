#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "affq/grid.hpp"
#include "oracles.hpp"

using affq::cplx;
using affq::Domain;
using affq::GridFunction;
using affq::GridSpec;

namespace {

GridSpec spec256() { return GridSpec{}; }

double gq(double q) { return std::exp(-0.5 * (q - 0.3) * (q - 0.3)); }

}  // namespace

TEST_CASE("grid spec validation") {
  GridSpec s;
  CHECK_NOTHROW(s.validate());
  s.n_p = 100;
  CHECK_THROWS_AS(s.validate(), affq::DomainMismatch);
  s = GridSpec{};
  s.q_max = s.q_min;
  CHECK_THROWS_AS(s.validate(), affq::DomainMismatch);
}

TEST_CASE("dual lattice spacing") {
  const GridSpec s = spec256();
  CHECK(std::abs(s.dp() * s.dx() * static_cast<double>(s.n_p) - 2.0 * std::numbers::pi) < 1e-12);
  CHECK(s.x_axis().at(s.n_p / 2) == 0.0);
}

TEST_CASE("partial Fourier transform of a Gaussian is the same Gaussian") {
  const GridSpec s = spec256();
  const auto u = GridFunction::sample(s, Domain::PQ, [](double p, double q) { return cplx(std::exp(-0.5 * p * p) * gq(q)); });
  const auto v = affq::partial_fourier(u);
  CHECK(v.domain() == Domain::XQ);
  const auto expect =
      GridFunction::sample(s, Domain::XQ, [](double x, double q) { return cplx(oracle::gaussian_fourier(x) * gq(q)); });
  CHECK((v - expect).max_abs() < 1e-10);
}

TEST_CASE("partial Fourier transform of a shifted Gaussian carries the phase e^{-i p0 x}") {
  const GridSpec s = spec256();
  const double p0 = 1.25;
  const auto u = GridFunction::sample(s, Domain::PQ, [&](double p, double q) {
    return cplx(std::exp(-0.5 * (p - p0) * (p - p0)) * gq(q));
  });
  const auto expect = GridFunction::sample(s, Domain::XQ, [&](double x, double q) {
    return std::polar(oracle::gaussian_fourier(x) * gq(q), -p0 * x);
  });
  CHECK((affq::partial_fourier(u) - expect).max_abs() < 1e-10);
}

TEST_CASE("partial Fourier transform is linear, unitary and invertible") {
  const GridSpec s = spec256();
  const GridFunction zero(s, Domain::PQ);
  CHECK(affq::partial_fourier(zero).max_abs() == 0.0);

  std::mt19937_64 g(12);
  std::normal_distribution<double> n;
  GridFunction u(s, Domain::PQ);
  for (auto& v : u.values()) v = cplx(n(g), n(g));
  const auto v = affq::partial_fourier(u);
  CHECK(std::abs(v.norm() - u.norm()) / u.norm() < 1e-12);
  const auto back = affq::inverse_partial_fourier(v);
  CHECK((back - u).norm() / u.norm() < 1e-12);
  CHECK_THROWS_AS(affq::partial_fourier(v), affq::DomainMismatch);
}

TEST_CASE("transform of p u is i d/dx of the transform of u") {
  const GridSpec s = spec256();
  auto f = [](double p, double q) { return std::exp(-0.5 * p * p - 0.3 * p) * gq(q); };
  const auto u = GridFunction::sample(s, Domain::PQ, [&](double p, double q) { return cplx(f(p, q)); });
  const auto pu = GridFunction::sample(s, Domain::PQ, [&](double p, double q) { return cplx(p * f(p, q)); });
  auto rhs = affq::derivative_cols(affq::partial_fourier(u), 1, affq::DerivativeScheme::Spectral);
  rhs *= cplx(0.0, 1.0);
  CHECK(affq::relative_l2(affq::partial_fourier(pu), rhs, u) < 1e-8);

  // and the transform of d_p u is i x times the transform of u
  const auto du = affq::derivative_cols(u, 1, affq::DerivativeScheme::Spectral);
  auto xu = affq::partial_fourier(u);
  xu.multiply_by([](double, double x) { return cplx(0.0, x); });
  CHECK(affq::relative_l2(affq::partial_fourier(du), xu, u) < 1e-8);
}

TEST_CASE("derivatives along both axes") {
  GridSpec s;
  s.n_p = s.n_q = 128;
  const auto f = GridFunction::sample(s, Domain::PQ, [](double p, double q) {
    return cplx(std::exp(-0.5 * p * p) * std::exp(-q * q));
  });
  const auto dfp = GridFunction::sample(s, Domain::PQ, [](double p, double q) {
    return cplx(-p * std::exp(-0.5 * p * p) * std::exp(-q * q));
  });
  const auto dfq = GridFunction::sample(s, Domain::PQ, [](double p, double q) {
    return cplx(-2.0 * q * std::exp(-0.5 * p * p) * std::exp(-q * q));
  });
  using affq::DerivativeScheme;
  CHECK((affq::derivative_cols(f, 1, DerivativeScheme::Spectral) - dfp).max_abs() < 1e-10);
  CHECK((affq::derivative_rows(f, 1, DerivativeScheme::Spectral) - dfq).max_abs() < 1e-10);
  CHECK((affq::derivative_cols(f, 1, DerivativeScheme::FiniteDifference8) - dfp).max_abs() < 1e-4);
  CHECK((affq::derivative_rows(f, 1, DerivativeScheme::FiniteDifference8) - dfq).max_abs() < 1e-4);
}

TEST_CASE("eighth-order finite differences converge at order eight") {
  auto err = [](std::size_t n) {
    const double L = 2.0 * std::numbers::pi, h = L / static_cast<double>(n);
    affq::CVector f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = std::sin(static_cast<double>(j) * h);
    const auto d = affq::fourier::fd8().derivative(f, h, true);
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) e = std::max(e, std::abs(d[j] - std::cos(static_cast<double>(j) * h)));
    return e;
  };
  const double slope = std::log2(err(32) / err(64));
  CHECK(slope > 7.5);
  CHECK(slope < 8.5);
}

TEST_CASE("spectral shift") {
  const std::size_t n = 64;
  const double L = 10.0, h = L / n;
  affq::CVector f(n);
  auto fn = [&](double s) { return std::exp(-2.0 * (s - 5.0) * (s - 5.0)); };
  for (std::size_t j = 0; j < n; ++j) f[j] = fn(j * h);
  const auto whole = affq::fourier::spectral_shift(f, 3 * h, L);
  for (std::size_t j = 0; j + 3 < n; ++j) CHECK(whole[j] == f[j + 3]);
  const auto part = affq::fourier::spectral_shift(f, 0.37, L);
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) e = std::max(e, std::abs(part[j] - fn(j * h + 0.37)));
  CHECK(e < 1e-10);
}

TEST_CASE("cosine taper keeps the interior and zeroes the edge") {
  GridSpec s;
  s.n_p = s.n_q = 64;
  const auto one = GridFunction::sample(s, Domain::PQ, [](double, double) { return cplx(1.0); });
  const auto t = affq::cosine_taper(one, 0.1);
  CHECK(t(32, 32) == cplx(1.0));
  CHECK(t(0, 32) == cplx(0.0));
  CHECK(t(32, 63) == cplx(0.0));
}

TEST_CASE("grid arithmetic checks the lattice") {
  GridSpec a, b;
  b.n_p = 128;
  GridFunction f(a, Domain::PQ), g(b, Domain::PQ), h(a, Domain::XQ);
  CHECK_THROWS_AS(f + g, affq::DomainMismatch);
  CHECK_THROWS_AS(f + h, affq::DomainMismatch);
}
