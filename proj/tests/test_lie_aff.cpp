#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "affq/lie_aff.hpp"
#include "oracles.hpp"

using affq::CoadjointPoint;
using affq::GroupElement;
using affq::LieAlgebraElement;
using affq::OrbitKind;
using affq::Rational;
using Q = Rational;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(20240601);
  return r;
}

Q random_positive(std::mt19937_64& g) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 12);
  return Q(num(g), den(g));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("bracket") {
  using L = LieAlgebraElement<Q>;
  CHECK(affq::bracket(affq::generator_x<Q>(), affq::generator_y<Q>()) == L{0, 1});
  const L z{Q(2, 3), Q(-5)};
  CHECK(affq::bracket(z, z) == L{0, 0});
  CHECK(affq::bracket(L{2, 3}, L{1, 5}) == L{0, 7});
}

TEST_CASE("bracket agrees with the 2x2 matrix commutator") {
  // Z = [[alpha, beta], [0, 0]].
  auto& g = rng();
  for (int s = 0; s < 100; ++s) {
    const LieAlgebraElement<Q> z{oracle::random_rational(g), oracle::random_rational(g)};
    const LieAlgebraElement<Q> t{oracle::random_rational(g), oracle::random_rational(g)};
    const Q comm_01 = z.alpha * t.beta - t.alpha * z.beta;  // (ZT - TZ)_{01}; the other entries vanish
    CHECK(affq::bracket(z, t) == LieAlgebraElement<Q>{0, comm_01});
  }
}

TEST_CASE("Jacobi identity holds exactly") {
  auto& g = rng();
  for (int s = 0; s < 100; ++s) {
    LieAlgebraElement<Q> a{oracle::random_rational(g), oracle::random_rational(g)};
    LieAlgebraElement<Q> b{oracle::random_rational(g), oracle::random_rational(g)};
    LieAlgebraElement<Q> c{oracle::random_rational(g), oracle::random_rational(g)};
    const auto sum = affq::bracket(a, affq::bracket(b, c)) + affq::bracket(b, affq::bracket(c, a)) +
                     affq::bracket(c, affq::bracket(a, b));
    CHECK(sum == LieAlgebraElement<Q>{0, 0});
  }
}

TEST_CASE("group law, identity and inverse") {
  const GroupElement<Q> g(Q(3, 2), Q(-1, 4)), h(Q(2), Q(5));
  CHECK(g * GroupElement<Q>::identity() == g);
  CHECK(g * g.inverse() == GroupElement<Q>::identity());
  // composition of affine maps t -> a t + b
  const Q t(7, 3);
  CHECK((g * h)(t) == g(h(t)));
  CHECK_THROWS_AS(GroupElement<Q>(Q(0), Q(1)), affq::InvalidGroupElement);
  CHECK_THROWS_AS(GroupElement<double>(-1.0, 0.0), affq::InvalidGroupElement);
}

TEST_CASE("exp_group examples") {
  const auto a = affq::exp_group({0.0, 2.5});
  CHECK(a.a() == 1.0);
  CHECK(a.b() == 2.5);
  const auto b = affq::exp_group({0.7, 0.0});
  CHECK(b.a() == std::exp(0.7));
  CHECK(b.b() == 0.0);
  const auto c = affq::exp_group({1.0, 1.0});
  const auto [oa, ob] = oracle::exp_group(1.0, 1.0);
  CHECK(rel(c.a(), oa) < 1e-15);
  CHECK(rel(c.b(), ob) < 1e-15);
  CHECK(std::abs(c.a() - std::exp(1.0)) < 1e-15);
  CHECK(std::abs(c.b() - (std::exp(1.0) - 1.0)) < 1e-15);
}

TEST_CASE("exp_group matches the matrix exponential for |alpha| in [1e-300, 50]") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> logmag(-300.0, std::log10(50.0)), beta(-5.0, 5.0);
  std::bernoulli_distribution sign(0.5);
  double worst = 0.0;
  for (int s = 0; s < 2000; ++s) {
    const double alpha = (sign(g) ? -1.0 : 1.0) * std::pow(10.0, logmag(g));
    const double b = beta(g);
    const auto e = affq::exp_group({alpha, b});
    const auto [oa, ob] = oracle::exp_group(alpha, b);
    worst = std::max({worst, std::abs(e.a() - oa) / std::abs(oa), std::abs(e.b() - ob) / std::max(std::abs(ob), 1e-300)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("exprel is accurate through zero") {
  CHECK(affq::exprel(0.0) == 1.0);
  CHECK(std::abs(affq::exprel(1e-10) - (1.0 + 5e-11)) < 1e-16);
  CHECK(std::abs(affq::exprel(-1e-9) - (1.0 - 5e-10)) < 1e-16);
  CHECK(std::abs(affq::exprel(2.0) - (std::exp(2.0) - 1.0) / 2.0) < 1e-15);
}

TEST_CASE("coadjoint action examples") {
  const CoadjointPoint<Q> f{Q(2, 3), Q(-4)};
  CHECK(affq::coadjoint_act(GroupElement<Q>::identity(), f) == f);
  CHECK(affq::coadjoint_act(GroupElement<Q>(1, 0), CoadjointPoint<Q>{0, 1}) == CoadjointPoint<Q>{0, 1});

  // K(exp(1,1))(0,1) = (1 - e^-1, e^-1); oracle: exp(-ad_U) from Eigen, with ad_U = [[0,0],[-beta, alpha]]
  // acting on (alpha, beta) coordinates, transposed for the dual.
  const auto neg_ad = oracle::expm({{{0.0, 0.0}, {1.0, -1.0}}});
  const double x_expect = neg_ad[1][0], y_expect = neg_ad[1][1];
  const auto via_exp = affq::coadjoint_exp_act({1.0, 1.0}, {0.0, 1.0});
  CHECK(std::abs(via_exp.x_coad - x_expect) < 1e-15);
  CHECK(std::abs(via_exp.y_coad - y_expect) < 1e-15);
  CHECK(std::abs(via_exp.x_coad - (1.0 - std::exp(-1.0))) < 1e-15);
  const auto via_group = affq::coadjoint_act(affq::exp_group({1.0, 1.0}), CoadjointPoint<double>{0.0, 1.0});
  CHECK(std::abs(via_group.x_coad - via_exp.x_coad) < 1e-15);
  CHECK(std::abs(via_group.y_coad - via_exp.y_coad) < 1e-15);
}

TEST_CASE("coadjoint closed form agrees with the matrix oracle for random U") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int s = 0; s < 200; ++s) {
    const double alpha = d(g), beta = d(g), x = d(g), y = d(g);
    const auto m = oracle::expm({{{0.0, 0.0}, {beta, -alpha}}});
    const auto got = affq::coadjoint_exp_act({alpha, beta}, {x, y});
    CHECK(std::abs(got.x_coad - (m[0][0] * x + m[1][0] * y)) < 1e-12);
    CHECK(std::abs(got.y_coad - (m[0][1] * x + m[1][1] * y)) < 1e-12);
  }
}

TEST_CASE("coadjoint action is a left action, exactly") {
  auto& g = rng();
  for (int s = 0; s < 300; ++s) {
    const GroupElement<Q> g1(random_positive(g), oracle::random_rational(g));
    const GroupElement<Q> g2(random_positive(g), oracle::random_rational(g));
    const CoadjointPoint<Q> f{oracle::random_rational(g), oracle::random_rational(g)};
    CHECK(affq::coadjoint_act(g1 * g2, f) == affq::coadjoint_act(g1, affq::coadjoint_act(g2, f)));
  }
}

TEST_CASE("coadjoint action in floating point") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int s = 0; s < 300; ++s) {
    const GroupElement<double> g1(std::exp(d(g)), d(g)), g2(std::exp(d(g)), d(g));
    const CoadjointPoint<double> f{d(g), d(g)};
    const auto a = affq::coadjoint_act(g1 * g2, f);
    const auto b = affq::coadjoint_act(g1, affq::coadjoint_act(g2, f));
    CHECK(std::abs(a.x_coad - b.x_coad) < 1e-12);
    CHECK(std::abs(a.y_coad - b.y_coad) < 1e-12);
  }
}

TEST_CASE("classify_orbit examples") {
  const auto p = affq::classify_orbit(CoadjointPoint<Q>{3, 0});
  CHECK(p.kind == OrbitKind::Point);
  CHECK(p.lambda == Q(3));
  CHECK(affq::classify_orbit(CoadjointPoint<Q>{0, 1}).kind == OrbitKind::UpperHalfPlane);
  CHECK(affq::classify_orbit(CoadjointPoint<Q>{5, -2}).kind == OrbitKind::LowerHalfPlane);
  CHECK(affq::classify_orbit(CoadjointPoint<double>{1.0, 1e-13}, 1e-12).kind == OrbitKind::Point);
  CHECK(affq::classify_orbit(CoadjointPoint<double>{1.0, 1e-13}).kind == OrbitKind::UpperHalfPlane);
}

TEST_CASE("orbits are invariant and point orbits are fixed") {
  auto& g = rng();
  for (int s = 0; s < 500; ++s) {
    const GroupElement<Q> h(random_positive(g), oracle::random_rational(g));
    CoadjointPoint<Q> f{oracle::random_rational(g), oracle::random_rational(g)};
    if (s % 5 == 0) f.y_coad = 0;
    const auto moved = affq::coadjoint_act(h, f);
    CHECK(affq::classify_orbit(moved) == affq::classify_orbit(f));
    if (f.y_coad == 0) CHECK(moved == f);
  }
}

TEST_CASE("hamiltonian symbols") {
  using affq::ExpPolySymbol;
  CHECK(affq::hamiltonian(LieAlgebraElement<Q>{1, 0}) == ExpPolySymbol::monomial(1, 0));
  CHECK(affq::hamiltonian(LieAlgebraElement<Q>{0, 1}) == ExpPolySymbol::monomial(0, 1));
  CHECK(affq::hamiltonian(LieAlgebraElement<Q>{2, -3}) ==
        ExpPolySymbol::monomial(1, 0, 2) + ExpPolySymbol::monomial(0, 1, -3));
}

TEST_CASE("Kirillov form") {
  using L = LieAlgebraElement<double>;
  CHECK(affq::kirillov_form(CoadjointPoint<double>{0.0, 1.0}, L{1, 0}, L{0, 1}) == 1.0);
  const L z{0.3, -1.2};
  CHECK(affq::kirillov_form(CoadjointPoint<double>{2.0, 5.0}, z, z) == 0.0);
  const double e2 = std::exp(2.0);
  CHECK(std::abs(affq::kirillov_form(CoadjointPoint<double>{7.0, e2}, L{1, 0}, L{0, 1}) - e2) < 1e-15);
  CHECK_THROWS_AS(affq::kirillov_form(CoadjointPoint<double>{1.0, 0.0}, L{1, 0}, L{0, 1}), affq::DegenerateOrbit);

  // Darboux: omega_F(Z, T) = (alpha1 beta2 - alpha2 beta1) e^q at F = (p, e^q).
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int s = 0; s < 50; ++s) {
    const double p = d(g), q = d(g);
    const L a{d(g), d(g)}, b{d(g), d(g)};
    const double got = affq::kirillov_form(CoadjointPoint<double>{p, std::exp(q)}, a, b);
    CHECK(std::abs(got - (a.alpha * b.beta - b.alpha * a.beta) * std::exp(q)) < 1e-12);
    const auto m = affq::kirillov_matrix_darboux(p, q);
    CHECK(std::abs(m[0][0]) < 1e-12);
    CHECK(std::abs(m[0][1] - 1.0) < 1e-12);
    CHECK(std::abs(m[1][0] + 1.0) < 1e-12);
    CHECK(std::abs(m[1][1]) < 1e-12);
  }
}
