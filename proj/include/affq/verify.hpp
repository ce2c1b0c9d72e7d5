#pragma once

// Verification suites behind `affq verify`. Each suite returns one record per
// check: {test, params, discrepancy, tolerance, pass}. Exact checks report the
// number of failing samples against tolerance 0.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "affq/grid.hpp"
#include "affq/io.hpp"
#include "affq/lie_aff.hpp"
#include "affq/quantize.hpp"
#include "affq/representation.hpp"
#include "affq/symbol.hpp"

namespace affq {

enum class EvolutionChoice { Characteristics, RK4, Both };

struct Tolerances {
  double conjugation = 1e-6;
  double conjugation_exact = 1e-10;
  double generator_grid = 1e-8;
  double slope = 0.2;
  double rk4 = 1e-6;
  double characteristics = 1e-9;
  double unitarity = 1e-8;
  double exp_group = 1e-12;
};

struct RunConfig {
  GridSpec grid{};
  int truncation = 20;
  double taper = 0.1;
  DerivativeScheme derivative = DerivativeScheme::Spectral;

  double S = 8.0;
  std::size_t n = 4096;
  /// +1 or -1 for one half-line, 0 for both.
  int sigma = 0;
  /// Half-width of the lattice used by `exponentiate`; RK4 with 1000 steps is
  /// only stable for S below about 6.8 at |beta| = 3.
  double evolve_S = 6.0;
  int steps = 1000;
  EvolutionChoice evolution = EvolutionChoice::Both;

  std::uint64_t seed = 42;
  int lie_samples = 200;
  int orbit_samples = 500;
  int group_samples = 50;

  Tolerances tol{};
  std::string format = "json";

  /// Single exponentiate case; defaults to the standard sweep.
  std::optional<double> alpha, beta, t;

  void validate() const {
    const double all[] = {tol.conjugation, tol.conjugation_exact, tol.generator_grid, tol.slope,
                          tol.rk4,         tol.characteristics,   tol.unitarity,      tol.exp_group};
    for (double v : all)
      if (!(v > 0.0)) throw ParseError("tolerances must be positive");
    if (sigma != 0 && sigma != 1 && sigma != -1) throw ParseError("sigma must be -1, 0 or 1");
    if (format != "json" && format != "csv") throw ParseError("format must be json or csv");
    if (truncation < 1 || steps < 1) throw ParseError("truncation and steps must be positive");
    grid.validate();
  }

  std::vector<int> sigmas() const { return sigma == 0 ? std::vector<int>{1, -1} : std::vector<int>{sigma}; }
};

inline void to_json(json& j, const RunConfig& c) {
  j = json{{"grid", c.grid},
           {"truncation", c.truncation},
           {"taper", c.taper},
           {"derivative", c.derivative == DerivativeScheme::Spectral ? "spectral" : "fd"},
           {"S", c.S},
           {"n", c.n},
           {"sigma", c.sigma},
           {"evolve_S", c.evolve_S},
           {"steps", c.steps},
           {"evolution", c.evolution == EvolutionChoice::Both
                             ? "both"
                             : (c.evolution == EvolutionChoice::RK4 ? "rk4" : "characteristics")},
           {"seed", c.seed},
           {"lie_samples", c.lie_samples},
           {"orbit_samples", c.orbit_samples},
           {"group_samples", c.group_samples},
           {"tolerances",
            {{"conjugation", c.tol.conjugation},
             {"conjugation_exact", c.tol.conjugation_exact},
             {"generator_grid", c.tol.generator_grid},
             {"slope", c.tol.slope},
             {"rk4", c.tol.rk4},
             {"characteristics", c.tol.characteristics},
             {"unitarity", c.tol.unitarity},
             {"exp_group", c.tol.exp_group}}},
           {"format", c.format}};
}

/// Overlays the fields present in j onto c.
inline void merge_config(RunConfig& c, const json& j) {
  if (j.contains("grid")) c.grid = j.at("grid").get<GridSpec>();
  c.truncation = j.value("truncation", c.truncation);
  c.taper = j.value("taper", c.taper);
  if (j.contains("derivative"))
    c.derivative = j.at("derivative").get<std::string>() == "fd" ? DerivativeScheme::FiniteDifference8
                                                                 : DerivativeScheme::Spectral;
  c.S = j.value("S", c.S);
  c.n = j.value("n", c.n);
  c.sigma = j.value("sigma", c.sigma);
  c.evolve_S = j.value("evolve_S", c.evolve_S);
  c.steps = j.value("steps", c.steps);
  if (j.contains("evolution")) {
    const auto e = j.at("evolution").get<std::string>();
    c.evolution = e == "rk4" ? EvolutionChoice::RK4
                             : (e == "characteristics" ? EvolutionChoice::Characteristics : EvolutionChoice::Both);
  }
  c.seed = j.value("seed", c.seed);
  c.lie_samples = j.value("lie_samples", c.lie_samples);
  c.orbit_samples = j.value("orbit_samples", c.orbit_samples);
  c.group_samples = j.value("group_samples", c.group_samples);
  c.format = j.value("format", c.format);
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    c.tol.conjugation = t.value("conjugation", c.tol.conjugation);
    c.tol.conjugation_exact = t.value("conjugation_exact", c.tol.conjugation_exact);
    c.tol.generator_grid = t.value("generator_grid", c.tol.generator_grid);
    c.tol.slope = t.value("slope", c.tol.slope);
    c.tol.rk4 = t.value("rk4", c.tol.rk4);
    c.tol.characteristics = t.value("characteristics", c.tol.characteristics);
    c.tol.unitarity = t.value("unitarity", c.tol.unitarity);
    c.tol.exp_group = t.value("exp_group", c.tol.exp_group);
  }
}

struct CheckRecord {
  std::string test;
  json params;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline void to_json(json& j, const CheckRecord& r) {
  j = json{{"test", r.test},
           {"params", r.params},
           {"discrepancy", r.discrepancy},
           {"tolerance", r.tolerance},
           {"pass", r.pass}};
}

inline CheckRecord within(std::string test, json params, double discrepancy, double tolerance) {
  const bool ok = std::isfinite(discrepancy) && discrepancy < tolerance;
  return {std::move(test), std::move(params), discrepancy, tolerance, ok};
}

inline CheckRecord exact(std::string test, json params, int failures) {
  return {std::move(test), std::move(params), static_cast<double>(failures), 0.0, failures == 0};
}

/// 2x2 matrix exponential by scaling and squaring of a Taylor polynomial.
inline Matrix2<double> expm2(const Matrix2<double>& m) {
  using LD = long double;
  LD norm = 0;
  for (const auto& r : m) norm = std::max(norm, std::abs(static_cast<LD>(r[0])) + std::abs(static_cast<LD>(r[1])));
  int squarings = 0;
  while (norm > 0.25L) {
    norm /= 2;
    ++squarings;
  }
  const LD scale = std::ldexp(1.0L, -squarings);
  std::array<std::array<LD, 2>, 2> a{}, term{}, acc{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      a[r][c] = static_cast<LD>(m[r][c]) * scale;
      term[r][c] = r == c ? 1.0L : 0.0L;
      acc[r][c] = term[r][c];
    }
  auto mul = [](const auto& x, const auto& y) {
    std::array<std::array<LD, 2>, 2> z{};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) z[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
    return z;
  };
  for (int k = 1; k <= 24; ++k) {
    term = mul(term, a);
    for (auto& r : term)
      for (auto& v : r) v /= k;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) acc[r][c] += term[r][c];
  }
  for (int s = 0; s < squarings; ++s) acc = mul(acc, acc);
  Matrix2<double> out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = static_cast<double>(acc[r][c]);
  return out;
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int max_num = 60, int max_den = 24) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline Rational random_positive_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 60), den(1, 24);
  return Rational(num(rng), den(rng));
}

inline GridFunction gaussian_pq(const RunConfig& cfg) {
  GridFunction u = GridFunction::sample(cfg.grid, Domain::PQ, [](double p, double q) {
    return cplx(std::exp(-0.5 * p * p - 0.5 * q * q));
  });
  return cfg.taper > 0.0 ? cosine_taper(u, cfg.taper) : u;
}

inline HalfLineFunction gaussian_half_line(const Lattice& lat, double centre, double width, double chirp = 0.0) {
  return HalfLineFunction::sample(lat, [=](double s) {
    const double d = (s - centre) / width;
    return std::polar(std::exp(-0.5 * d * d), chirp * s);
  });
}

inline double log_log_slope(const std::vector<double>& h, const std::vector<double>& d) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]);
    my += std::log(d[i]);
  }
  mx /= static_cast<double>(h.size());
  my /= static_cast<double>(h.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]) - mx;
    sxy += x * (std::log(d[i]) - my);
    sxx += x * x;
  }
  return sxy / sxx;
}

inline json z_params(const LieAlgebraElement<double>& z) { return json{{"alpha", z.alpha}, {"beta", z.beta}}; }

}  // namespace detail

/// Lie-algebra level: the star commutator realises the bracket, higher P^k
/// vanish, star is associative, and the coadjoint geometry is consistent.
inline std::vector<CheckRecord> suite_lie_hom(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed);
  const GaussianRational i = GaussianRational::i();

  int hom_fail = 0, vanish_fail = 0;
  for (int s = 0; s < cfg.lie_samples; ++s) {
    const LieAlgebraElement<Rational> z{detail::random_rational(rng), detail::random_rational(rng)};
    const LieAlgebraElement<Rational> t{detail::random_rational(rng), detail::random_rational(rng)};
    const ExpPolySymbol zt = hamiltonian(z), tt = hamiltonian(t);
    if (!(star_commutator(i * zt, i * tt) == i * hamiltonian(bracket(z, t)))) ++hom_fail;
    for (int k = 2; k <= 10; ++k)
      if (!p_r(zt, tt, k).is_zero()) ++vanish_fail;
  }
  out.push_back(exact("star_commutator_realises_bracket", {{"samples", cfg.lie_samples}}, hom_fail));
  out.push_back(exact("higher_bidifferential_terms_vanish", {{"samples", cfg.lie_samples}, {"k", "2..10"}}, vanish_fail));

  int assoc_fail = 0;
  const int assoc_samples = 10;
  auto random_symbol = [&] {
    std::uniform_int_distribution<int> deg(0, 3), freq(-3, 3), count(1, 3);
    ExpPolySymbol u;
    const int terms = count(rng);
    for (int j = 0; j < terms; ++j)
      u.add_term(deg(rng), freq(rng), GaussianRational(detail::random_rational(rng, 9, 4), detail::random_rational(rng, 9, 4)));
    return u;
  };
  for (int s = 0; s < assoc_samples; ++s) {
    const ExpPolySymbol u = random_symbol(), v = random_symbol(), w = random_symbol();
    if (!(star(star(u, v), w) == star(u, star(v, w)))) ++assoc_fail;
  }
  out.push_back(exact("star_associative", {{"samples", assoc_samples}}, assoc_fail));

  int orbit_fail = 0, action_fail = 0;
  for (int s = 0; s < cfg.orbit_samples; ++s) {
    const GroupElement<Rational> g(detail::random_positive_rational(rng), detail::random_rational(rng));
    const GroupElement<Rational> h(detail::random_positive_rational(rng), detail::random_rational(rng));
    CoadjointPoint<Rational> f{detail::random_rational(rng), detail::random_rational(rng)};
    if (s % 5 == 0) f.y_coad = 0;
    const auto moved = coadjoint_act(g, f);
    if (!(classify_orbit(moved) == classify_orbit(f))) ++orbit_fail;
    if (f.y_coad == 0 && !(moved == f)) ++orbit_fail;
    if (!(coadjoint_act(g * h, f) == coadjoint_act(g, coadjoint_act(h, f)))) ++action_fail;
  }
  out.push_back(exact("orbit_invariance", {{"samples", cfg.orbit_samples}}, orbit_fail));
  out.push_back(exact("coadjoint_action_homomorphism", {{"samples", cfg.orbit_samples}}, action_fail));

  double worst = 0.0;
  std::uniform_real_distribution<double> log_mag(std::log(1e-12), std::log(50.0)), unit(-1.0, 1.0);
  for (int s = 0; s < cfg.orbit_samples; ++s) {
    const double alpha = std::copysign(std::exp(log_mag(rng)), unit(rng));
    const LieAlgebraElement<double> z{alpha, 3.0 * unit(rng)};
    const auto g = exp_group(z);
    const auto m = expm2({{{z.alpha, z.beta}, {0.0, 0.0}}});
    worst = std::max(worst, std::abs(g.a() - m[0][0]) / std::abs(m[0][0]));
    worst = std::max(worst, std::abs(g.b() - m[0][1]) / std::max(std::abs(m[0][1]), 1e-300));
  }
  out.push_back(within("exp_group_matches_matrix_exponential",
                       {{"samples", cfg.orbit_samples}, {"alpha_range", "[1e-12, 50]"}}, worst, cfg.tol.exp_group));
  return out;
}

/// F_p ell_Z F_p^-1 against the closed-form lhat_Z on a PQ Gaussian.
inline std::vector<CheckRecord> suite_conjugation(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  const GridFunction u = detail::gaussian_pq(cfg);
  const LieAlgebraElement<double> x = generator_x(), y = generator_y();
  json grid = cfg.grid;
  {
    const double d = verify_conjugation(x, u, 1, cfg.derivative);
    out.push_back(within("conjugation", {{"Z", "X"}, {"R", 1}, {"grid", grid}}, d, cfg.tol.conjugation_exact));
  }
  const std::pair<const char*, LieAlgebraElement<double>> cases[] = {{"X", x}, {"Y", y}, {"X+Y", x + y}};
  for (const auto& [name, z] : cases) {
    const double d = verify_conjugation(z, u, cfg.truncation, cfg.derivative);
    out.push_back(within("conjugation", {{"Z", name}, {"R", cfg.truncation}, {"grid", grid}}, d, cfg.tol.conjugation));
  }
  return out;
}

/// Generator algebra in s-coordinates and the t-derivative of the closed-form flow.
inline std::vector<CheckRecord> suite_generator(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed + 1);

  int fail = 0;
  for (int s = 0; s < cfg.lie_samples; ++s) {
    const LieAlgebraElement<Rational> z{detail::random_rational(rng), detail::random_rational(rng)};
    const LieAlgebraElement<Rational> t{detail::random_rational(rng), detail::random_rational(rng)};
    if (!(commutator(s_generator_symbol(z), s_generator_symbol(t)) == s_generator_symbol(bracket(z, t)))) ++fail;
  }
  out.push_back(exact("s_generator_commutator_exact", {{"samples", cfg.lie_samples}}, fail));

  // Grid level on the sheared image of a compact Gaussian.
  const GridFunction v = GridFunction::sample(cfg.grid, Domain::XQ, [](double x, double q) {
    return cplx(std::exp(-0.5 * x * x - q * q));
  });
  const GridFunction w = to_s_coordinates(v);
  const std::pair<LieAlgebraElement<double>, LieAlgebraElement<double>> pairs[] = {
      {{1.0, 0.0}, {0.0, 1.0}}, {{1.0, 1.0}, {2.0, -3.0}}, {{-0.5, 2.0}, {1.5, 0.25}}};
  for (const auto& [z, t] : pairs) {
    const GeneratorOp a(z), b(t);
    GridFunction lhs = apply_s_generator(a, apply_s_generator(b, w, cfg.derivative), cfg.derivative);
    lhs -= apply_s_generator(b, apply_s_generator(a, w, cfg.derivative), cfg.derivative);
    const GridFunction rhs = apply_s_generator(GeneratorOp(bracket(z, t)), w, cfg.derivative);
    out.push_back(within("s_generator_commutator_grid", {{"Z", detail::z_params(z)}, {"T", detail::z_params(t)}},
                         relative_l2(lhs, rhs, w), cfg.tol.generator_grid));

    const GridFunction via_xq = to_s_coordinates(apply_generator(a, v, cfg.derivative));
    const GridFunction via_s = apply_s_generator(a, w, cfg.derivative);
    out.push_back(within("generator_in_s_coordinates", {{"Z", detail::z_params(z)}}, relative_l2(via_xq, via_s, w),
                         cfg.tol.generator_grid));
  }

  const std::vector<double> hs{1e-2, 1e-3, 1e-4};
  const LieAlgebraElement<double> zs[] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {2.0, -3.0}};
  for (int sigma : cfg.sigmas()) {
    const Lattice lat{cfg.S, cfg.n, sigma};
    const HalfLineFunction f = detail::gaussian_half_line(lat, 0.0, 0.5, 1.0);
    for (const auto& z : zs) {
      std::vector<double> d;
      for (double h : hs) d.push_back(check_generator(z, f, h));
      const double slope = detail::log_log_slope(hs, d);
      json params{{"Z", detail::z_params(z)}, {"sigma", sigma}, {"h", hs}, {"discrepancies", d}, {"slope", slope}};
      out.push_back(within("generator_derivative_order", params, std::abs(slope - 2.0), cfg.tol.slope));
    }
  }
  return out;
}

/// Cauchy problem d_t U = lhat_Z U against the closed form T(exp tZ).
inline std::vector<CheckRecord> suite_exponentiate(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  std::vector<LieAlgebraElement<double>> zs{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {2.0, -3.0}};
  std::vector<double> ts{0.1, 0.5, 1.0};
  if (cfg.alpha || cfg.beta) zs = {{cfg.alpha.value_or(0.0), cfg.beta.value_or(0.0)}};
  if (cfg.t) ts = {*cfg.t};
  const bool run_rk4 = cfg.evolution != EvolutionChoice::Characteristics;
  const bool run_char = cfg.evolution != EvolutionChoice::RK4;

  for (int sigma : cfg.sigmas()) {
    const Lattice lat{cfg.evolve_S, cfg.n, sigma};
    const HalfLineFunction f = detail::gaussian_half_line(lat, 0.5, 0.5);
    for (const auto& z : zs)
      for (double t : ts) {
        const HalfLineFunction closed = rep_one_param(z, t, f);
        json params{{"Z", detail::z_params(z)}, {"t", t}, {"sigma", sigma}, {"n", cfg.n}, {"S", cfg.evolve_S},
                    {"steps", cfg.steps}};
        if (run_rk4) {
          double d;
          try {
            d = relative_l2(evolve_cauchy(z, t, f, cfg.steps, {EvolutionBackend::RK4, DerivativeScheme::FiniteDifference8}),
                            closed, f);
          } catch (const CflViolation& e) {
            d = std::numeric_limits<double>::infinity();
            params["error"] = e.what();
          }
          out.push_back(within("exponentiate_rk4", params, d, cfg.tol.rk4));
        }
        if (run_char) {
          const double d = relative_l2(evolve_cauchy(z, t, f, cfg.steps, {EvolutionBackend::Characteristics}), closed, f);
          out.push_back(within("exponentiate_characteristics", params, d, cfg.tol.characteristics));
        }
        // Closed-form flow agrees with the group action of exp(tZ).
        const double g = relative_l2(rep_apply(ReprChoice::for_sign(sigma), exp_group(t * z), f), closed, f);
        out.push_back(within("one_parameter_matches_exp_group", params, g, cfg.tol.characteristics));
      }
  }
  return out;
}

/// Isometry and homomorphism of T_{Omega+-} for random group elements.
inline std::vector<CheckRecord> suite_unitarity(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed + 2);
  std::uniform_real_distribution<double> log_a(-1.5, 1.5), b_dist(-2.0, 2.0);
  for (int sigma : cfg.sigmas()) {
    const Lattice lat{cfg.S, cfg.n, sigma};
    const ReprChoice rep = ReprChoice::for_sign(sigma);
    const HalfLineFunction f = detail::gaussian_half_line(lat, 0.0, 0.5, 0.7);
    const HalfLineFunction h = detail::gaussian_half_line(lat, 0.3, 0.6, -1.1);
    double worst_ip = 0.0, worst_hom = 0.0;
    for (int s = 0; s < cfg.group_samples; ++s) {
      const GroupElement<double> g1(std::exp(log_a(rng)), b_dist(rng));
      const GroupElement<double> g2(std::exp(log_a(rng)), b_dist(rng));
      const cplx before = inner_product(f, h);
      const cplx after = inner_product(rep_apply(rep, g1, f), rep_apply(rep, g1, h));
      worst_ip = std::max(worst_ip, std::abs(after - before));
      const HalfLineFunction composed = rep_apply(rep, g1 * g2, f);
      const HalfLineFunction sequential = rep_apply(rep, g1, rep_apply(rep, g2, f));
      worst_hom = std::max(worst_hom, relative_l2(composed, sequential, f));
    }
    json params{{"samples", cfg.group_samples}, {"sigma", sigma}, {"n", cfg.n}, {"S", cfg.S}};
    out.push_back(within("inner_product_preserved", params, worst_ip, cfg.tol.unitarity));
    out.push_back(within("representation_homomorphism", params, worst_hom, cfg.tol.unitarity));
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lie-hom", "conjugation", "generator", "exponentiate", "unitarity"};
  return names;
}

inline std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "lie-hom") return suite_lie_hom(cfg);
  if (name == "conjugation") return suite_conjugation(cfg);
  if (name == "generator") return suite_generator(cfg);
  if (name == "exponentiate") return suite_exponentiate(cfg);
  if (name == "unitarity") return suite_unitarity(cfg);
  if (name == "all") {
    std::vector<CheckRecord> all;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, cfg);
      for (auto& r : part) {
        r.params["suite"] = n;
        all.push_back(std::move(r));
      }
    }
    return all;
  }
  throw ParseError("unknown suite '" + name + "'");
}

}  // namespace affq
