#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "affq/representation.hpp"
#include "oracles.hpp"

using affq::cplx;
using affq::GroupElement;
using affq::HalfLineFunction;
using affq::Lattice;
using affq::LieAlgebraElement;
using affq::ReprChoice;

namespace {

HalfLineFunction gaussian(const Lattice& lat, double centre, double width, double chirp = 0.0) {
  return HalfLineFunction::sample(lat, [=](double s) {
    const double d = (s - centre) / width;
    return std::polar(std::exp(-0.5 * d * d), chirp * s);
  });
}

/// C-infinity bump supported in [c - r, c + r].
HalfLineFunction bump(const Lattice& lat, double c, double r) {
  return HalfLineFunction::sample(lat, [=](double s) {
    const double d = (s - c) / r;
    return cplx(std::abs(d) < 1.0 ? std::exp(-1.0 / (1.0 - d * d)) : 0.0);
  });
}

double rel(const HalfLineFunction& a, const HalfLineFunction& b) { return affq::relative_l2(a, b, b); }

}  // namespace

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(HalfLineFunction(Lattice{8.0, 4096, 0}), affq::DomainMismatch);
  CHECK_THROWS_AS(HalfLineFunction(Lattice{-1.0, 4096, 1}), affq::DomainMismatch);
  const Lattice lat{8.0, 4096, -1};
  CHECK(lat.y(0) < 0.0);
  CHECK(std::abs(lat.y(lat.n / 2) + 1.0) < 1e-15);
}

TEST_CASE("norm is the dy/|y| norm pulled back to ds") {
  for (int sigma : {1, -1}) {
    const Lattice lat{8.0, 4096, sigma};
    const auto f = gaussian(lat, 0.3, 0.5);
    // int |f|^2 ds with |f|^2 = exp(-(s - c)^2 / w^2), w = 0.5
    CHECK(std::abs(f.norm() * f.norm() - oracle::gaussian_mass(0.5)) < 1e-10);
    // the same integral in y against dy/|y|: composite Simpson, uniform in y on each of
    // 300 segments with geometrically spaced endpoints
    double acc = 0.0;
    const double y0 = std::exp(-6.0), y1 = std::exp(6.0);
    const int segments = 300, nodes = 64;
    auto integrand = [](double y) {
      const double d = (std::log(y) - 0.3) / 0.5;
      return std::exp(-d * d) / y;
    };
    for (int k = 0; k < segments; ++k) {
      const double a = y0 * std::pow(y1 / y0, static_cast<double>(k) / segments);
      const double b = y0 * std::pow(y1 / y0, static_cast<double>(k + 1) / segments);
      const double h = (b - a) / nodes;
      double part = integrand(a) + integrand(b);
      for (int i = 1; i < nodes; ++i) part += (i % 2 ? 4.0 : 2.0) * integrand(a + i * h);
      acc += part * h / 3.0;
    }
    CHECK(std::abs(acc - f.norm() * f.norm()) < 1e-8);
  }
}

TEST_CASE("inner product examples") {
  const Lattice lat{8.0, 4096, 1};
  const auto f = gaussian(lat, 0.0, 0.5, 0.7), g = gaussian(lat, 0.4, 0.6, -1.2);
  const cplx ff = affq::inner_product(f, f);
  CHECK(ff.real() > 0.0);
  CHECK(ff.imag() == 0.0);
  auto pf = f, pg = g;
  affq::detail::apply_phase(pf, 1.7);
  affq::detail::apply_phase(pg, 1.7);
  CHECK(std::abs(affq::inner_product(pf, pg) - affq::inner_product(f, g)) < 1e-15);
  // unit Gaussian exp(-s^2/2) / pi^{1/4} has norm 1
  auto unit = gaussian(lat, 0.0, 1.0);
  unit *= cplx(std::pow(std::numbers::pi, -0.25));
  CHECK(std::abs(affq::inner_product(unit, unit) - 1.0) < 1e-10);
}

TEST_CASE("rep_apply examples") {
  const Lattice lat{8.0, 4096, 1};
  const auto f = gaussian(lat, 0.0, 0.5);
  const auto rep = ReprChoice::omega_plus();
  CHECK(rel(affq::rep_apply(rep, GroupElement<double>(1.0, 0.0), f), f) == 0.0);

  const auto phased = affq::rep_apply(rep, GroupElement<double>(1.0, 2.3), f);
  CHECK(std::abs(phased.norm() - f.norm()) < 1e-14);
  for (std::size_t j = 0; j < lat.n; j += 97) CHECK(std::abs(phased[j] - std::polar(1.0, 2.3 * lat.y(j)) * f[j]) < 1e-15);

  // (T(e, 0) f)(e^s) = f(e^{s+1}): support [-1, 1] moves to [-2, 0]
  const auto b = bump(lat, 0.0, 1.0);
  const auto moved = affq::rep_apply(rep, GroupElement<double>(std::exp(1.0), 0.0), b);
  CHECK(rel(moved, bump(lat, -1.0, 1.0)) < 1e-6);
  CHECK_THROWS_AS(affq::rep_apply(ReprChoice::omega_minus(), GroupElement<double>(1.0, 0.0), f), affq::DomainMismatch);
}

TEST_CASE("integer-step dilations are exact shifts") {
  const Lattice lat{8.0, 4096, 1};
  const auto f = gaussian(lat, 0.0, 0.5, 0.4);
  const double a = std::exp(25 * lat.step());
  const auto g = affq::rep_apply(ReprChoice::omega_plus(), GroupElement<double>(a, 0.0), f);
  for (std::size_t j = 0; j + 25 < lat.n; ++j) CHECK(g[j] == f[j + 25]);
}

TEST_CASE("shifts that leave the window are refused") {
  const Lattice lat{8.0, 4096, 1};
  const auto f = gaussian(lat, 6.0, 0.5);
  CHECK_THROWS_AS(affq::rep_apply(ReprChoice::omega_plus(), GroupElement<double>(std::exp(-4.0), 0.0), f),
                  affq::WindowError);
  try {
    affq::rep_apply(ReprChoice::omega_plus(), GroupElement<double>(std::exp(-4.0), 0.0), f);
  } catch (const affq::WindowError& e) {
    CHECK(e.mass_loss() > 0.4);
  }
}

TEST_CASE("rep_one_param examples") {
  for (int sigma : {1, -1}) {
    const Lattice lat{8.0, 4096, sigma};
    const auto f = gaussian(lat, 0.0, 0.5, 0.3);
    const double t = 0.8;
    CHECK(rel(affq::rep_one_param({1.0, 0.0}, t, f), affq::detail::shifted(f, t, {})) == 0.0);
    CHECK(rel(affq::rep_one_param({1.3, -0.4}, 0.0, f), f) == 0.0);
    const auto y = affq::rep_one_param({0.0, 1.5}, t, f);
    for (std::size_t j = 0; j < lat.n; j += 101) {
      CHECK(std::abs(y[j] - std::polar(1.0, t * 1.5 * lat.y(j)) * f[j]) < 1e-14);
      CHECK(std::abs(std::abs(y[j]) - std::abs(f[j])) < 1e-15);
    }
  }
}

TEST_CASE("one-parameter flow property") {
  for (int sigma : {1, -1}) {
    const Lattice lat{8.0, 4096, sigma};
    const auto f = gaussian(lat, 0.0, 0.5, -0.6);
    const LieAlgebraElement<double> z{0.7, -1.1};
    const auto a = affq::rep_one_param(z, 0.9, f);
    const auto b = affq::rep_one_param(z, 0.4, affq::rep_one_param(z, 0.5, f));
    CHECK(rel(b, a) < 1e-9);
  }
}

TEST_CASE("one-parameter subgroup agrees with the action of exp_group") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int sigma : {1, -1}) {
    const Lattice lat{8.0, 4096, sigma};
    const auto f = gaussian(lat, 0.0, 0.5, 0.2);
    for (int s = 0; s < 20; ++s) {
      const LieAlgebraElement<double> z{d(g), d(g)};
      const double t = d(g);
      const auto a = affq::rep_one_param(z, t, f);
      const auto b = affq::rep_apply(ReprChoice::for_sign(sigma), affq::exp_group(t * z), f);
      CHECK(rel(b, a) < 1e-12);
    }
  }
}

TEST_CASE("homomorphism and unitarity on random group elements") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> la(-1.5, 1.5), bd(-2.0, 2.0);
  for (int sigma : {1, -1}) {
    const Lattice lat{8.0, 4096, sigma};
    const auto rep = ReprChoice::for_sign(sigma);
    const auto f = gaussian(lat, 0.0, 0.5, 0.7), h = gaussian(lat, 0.3, 0.6, -1.1);
    for (int s = 0; s < 50; ++s) {
      const GroupElement<double> g1(std::exp(la(g)), bd(g)), g2(std::exp(la(g)), bd(g));
      CHECK(rel(affq::rep_apply(rep, g1 * g2, f), affq::rep_apply(rep, g1, affq::rep_apply(rep, g2, f))) < 1e-9);
      const cplx before = affq::inner_product(f, h);
      const cplx after = affq::inner_product(affq::rep_apply(rep, g1, f), affq::rep_apply(rep, g1, h));
      CHECK(std::abs(after - before) < 1e-8);
    }
  }
}

TEST_CASE("evolve_cauchy examples") {
  for (int sigma : {1, -1}) {
    const Lattice lat{6.0, 4096, sigma};
    const auto f = gaussian(lat, 0.5, 0.5);
    CHECK(rel(affq::evolve_cauchy({1.0, 1.0}, 0.0, f, 10), f) == 0.0);

    // alpha = 0: the flow is diagonal
    const auto diag = affq::evolve_cauchy({0.0, -2.0}, 0.7, f, 1000);
    CHECK(rel(diag, affq::rep_one_param({0.0, -2.0}, 0.7, f)) < 1e-14);

    affq::EvolveOptions rk4;
    rk4.backend = affq::EvolutionBackend::RK4;
    const auto r = affq::evolve_cauchy({1.0, 1.0}, 0.5, f, 1000, rk4);
    CHECK(affq::relative_l2(r, affq::rep_one_param({1.0, 1.0}, 0.5, f), f) < 1e-6);
    const auto c = affq::evolve_cauchy({1.0, 1.0}, 0.5, f, 1000);
    CHECK(affq::relative_l2(c, affq::rep_one_param({1.0, 1.0}, 0.5, f), f) < 1e-9);
  }
}

TEST_CASE("RK4 refuses steps beyond its stability bound") {
  const Lattice lat{8.0, 4096, 1};
  const auto f = gaussian(lat, 0.5, 0.5);
  affq::EvolveOptions rk4;
  rk4.backend = affq::EvolutionBackend::RK4;
  CHECK_THROWS_AS(affq::evolve_cauchy({2.0, -3.0}, 1.0, f, 1000, rk4), affq::CflViolation);
  try {
    affq::evolve_cauchy({2.0, -3.0}, 1.0, f, 1000, rk4);
  } catch (const affq::CflViolation& e) {
    CHECK(e.courant() > affq::rk4_stability_limit);
  }
}

TEST_CASE("check_generator decays like h^2") {
  for (int sigma : {1, -1}) {
    const Lattice lat{8.0, 4096, sigma};
    const auto f = gaussian(lat, 0.0, 0.5, 1.0);
    CHECK(affq::check_generator({1.0, 0.0}, f, 1e-4) < 1e-7);
    CHECK(affq::check_generator({0.0, 0.0}, f, 1e-3) == 0.0);
    const double d2 = affq::check_generator({0.0, 1.0}, f, 1e-2);
    const double d3 = affq::check_generator({0.0, 1.0}, f, 1e-3);
    const double d4 = affq::check_generator({0.0, 1.0}, f, 1e-4);
    CHECK(std::abs(std::log10(d2 / d3) - 2.0) < 0.2);
    CHECK(std::abs(std::log10(d3 / d4) - 2.0) < 0.2);
  }
}

TEST_CASE("characters of the full group") {
  CHECK(affq::character_apply(0, 0.0, -3.0, 1.0) == cplx(1.0));
  CHECK(affq::character_apply(1, 0.0, -2.0, 7.0) == cplx(-1.0));
  const cplx e = affq::character_apply(0, 1.0, std::exp(1.0), 0.0);
  CHECK(std::abs(e - cplx(std::cos(1.0), std::sin(1.0))) < 1e-15);
  CHECK_THROWS_AS(affq::character_apply(0, 1.0, 0.0, 0.0), affq::InvalidGroupElement);
  // multiplicative in a
  const double a1 = -1.7, a2 = 0.4;
  CHECK(std::abs(affq::character_apply(1, 0.6, a1 * a2, 0.0) -
                 affq::character_apply(1, 0.6, a1, 0.0) * affq::character_apply(1, 0.6, a2, 0.0)) < 1e-15);
}
