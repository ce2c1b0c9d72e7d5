// affq: command-line front end for the affine-group quantization library.
//
//   affq orbit  --x X --y Y [--act a=A,b=B] [--act-exp alpha=A,beta=B]
//   affq star   --u SYMBOL --v SYMBOL [--commutator]
//   affq lhat   --alpha A --beta B [--grid FILE [--to-s] --out FILE --format csv|bin]
//   affq rep    apply|one-param|evolve ...
//   affq verify lie-hom|conjugation|generator|exponentiate|unitarity|all [config flags]
//
// Symbols and config files may be given inline or as @path.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "affq/affq.hpp"

namespace {

using affq::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw affq::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string inline_or_file(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? slurp(arg.substr(1)) : arg; }

/// "a=1/2,b=3" -> {a: "1/2", b: "3"}
std::map<std::string, std::string> parse_pairs(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw affq::ParseError("expected key=value in '" + text + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

const std::string& need(const std::map<std::string, std::string>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw affq::ParseError("missing '" + key + "='");
  return it->second;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

// ---------------------------------------------------------------- orbit

struct OrbitArgs {
  std::string x = "0", y = "0";
  std::string act, act_exp;
};

int run_orbit(const OrbitArgs& a) {
  using affq::Rational;
  const affq::CoadjointPoint<Rational> f{affq::parse_rational(a.x), affq::parse_rational(a.y)};
  const auto id = affq::classify_orbit(f);
  json out{{"point", f}, {"orbit", id}};
  std::string label = affq::to_string(id.kind);
  if (id.kind == affq::OrbitKind::Point) label += "(" + affq::format_rational(id.lambda) + ")";
  out["label"] = label;
  if (!a.act.empty()) {
    const auto kv = parse_pairs(a.act);
    const affq::GroupElement<Rational> g(affq::parse_rational(need(kv, "a")), affq::parse_rational(need(kv, "b")));
    out["acted"] = affq::coadjoint_act(g, f);
  }
  if (!a.act_exp.empty()) {
    const auto kv = parse_pairs(a.act_exp);
    const affq::LieAlgebraElement<double> z{affq::to_double(affq::parse_rational(need(kv, "alpha"))),
                                            affq::to_double(affq::parse_rational(need(kv, "beta")))};
    const affq::CoadjointPoint<double> fd{affq::to_double(f.x_coad), affq::to_double(f.y_coad)};
    out["acted_exp"] = affq::coadjoint_exp_act(z, fd);
  }
  emit(std::cout, out);
  return 0;
}

// ---------------------------------------------------------------- star

struct StarArgs {
  std::string u, v;
  bool commutator = false;
};

int run_star(const StarArgs& a) {
  const auto u = affq::parse_symbol(inline_or_file(a.u));
  const auto v = affq::parse_symbol(inline_or_file(a.v));
  emit(std::cout, json(a.commutator ? affq::star_commutator(u, v) : affq::star(u, v)));
  return 0;
}

// ---------------------------------------------------------------- lhat

struct LhatArgs {
  double alpha = 0.0, beta = 0.0;
  std::string grid, out, format = "csv", scheme = "spectral";
  bool to_s = false;
};

affq::DerivativeScheme parse_scheme(const std::string& s) {
  return s == "fd" ? affq::DerivativeScheme::FiniteDifference8 : affq::DerivativeScheme::Spectral;
}

int run_lhat(const LhatArgs& a) {
  const affq::GeneratorOp op(a.alpha, a.beta);
  if (a.grid.empty()) {
    // Coefficients of lhat_Z in both coordinate systems.
    emit(std::cout, json{{"Z", affq::LieAlgebraElement<double>{a.alpha, a.beta}},
                         {"xq", {{"d_q", 0.5 * a.alpha}, {"d_x", -a.alpha}, {"multiplier", "i*beta*exp(q - x/2)"},
                                 {"beta", a.beta}}},
                         {"st", {{"d_s", a.alpha}, {"multiplier", "i*beta*exp(s)"}, {"beta", a.beta}}}});
    return 0;
  }
  std::ifstream in(a.grid, std::ios::binary);
  if (!in) throw affq::ParseError("cannot open '" + a.grid + "'");
  affq::GridFunction g = affq::read_grid(in);
  if (g.domain() == affq::Domain::PQ) g = affq::partial_fourier(g);
  if (a.to_s && g.domain() == affq::Domain::XQ) g = affq::to_s_coordinates(g);
  const auto scheme = parse_scheme(a.scheme);
  const affq::GridFunction result = g.domain() == affq::Domain::XQ ? affq::apply_generator(op, g, scheme)
                                                                   : affq::apply_s_generator(op, g, scheme);
  const auto fmt = a.format == "bin" ? affq::GridFormat::Binary : affq::GridFormat::Csv;
  if (a.out.empty() || a.out == "-") {
    affq::write_grid(std::cout, result, fmt);
  } else {
    std::ofstream out(a.out, std::ios::binary);
    affq::write_grid(out, result, fmt);
  }
  return 0;
}

// ---------------------------------------------------------------- rep

struct RepArgs {
  std::string mode;
  double a = 1.0, b = 0.0, alpha = 0.0, beta = 0.0, t = 1.0;
  int sigma = 1, steps = 1000;
  double S = 8.0;
  std::size_t n = 4096;
  std::string in, gaussian = "0,0.5", out, backend = "characteristics", scheme = "fd";
};

int run_rep(const RepArgs& r) {
  affq::HalfLineFunction f(affq::Lattice{r.S, r.n, r.sigma});
  if (!r.in.empty()) {
    std::ifstream in(r.in);
    if (!in) throw affq::ParseError("cannot open '" + r.in + "'");
    f = affq::read_half_line(in);
  } else {
    const auto comma = r.gaussian.find(',');
    if (comma == std::string::npos) throw affq::ParseError("--gaussian expects centre,width");
    const double centre = std::stod(r.gaussian.substr(0, comma));
    const double width = std::stod(r.gaussian.substr(comma + 1));
    f = affq::HalfLineFunction::sample(f.lattice(), [&](double s) {
      const double d = (s - centre) / width;
      return affq::cplx(std::exp(-0.5 * d * d));
    });
  }
  const auto rep = affq::ReprChoice::for_sign(f.sigma());
  const affq::LieAlgebraElement<double> z{r.alpha, r.beta};
  affq::HalfLineFunction result = f;
  if (r.mode == "apply") {
    result = affq::rep_apply(rep, affq::GroupElement<double>(r.a, r.b), f);
  } else if (r.mode == "one-param") {
    result = affq::rep_one_param(z, r.t, f);
  } else {
    affq::EvolveOptions opts;
    opts.backend = r.backend == "rk4" ? affq::EvolutionBackend::RK4 : affq::EvolutionBackend::Characteristics;
    opts.scheme = parse_scheme(r.scheme);
    result = affq::evolve_cauchy(z, r.t, f, r.steps, opts);
  }
  if (r.out.empty() || r.out == "-") {
    affq::write_half_line(std::cout, result);
  } else {
    std::ofstream out(r.out);
    affq::write_half_line(out, result);
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite, config, report;
  affq::RunConfig cfg;
  std::string derivative, evolution;
  std::optional<double> alpha, beta, t;
};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

int run_verify(VerifyArgs v, const CLI::App& app) {
  affq::RunConfig cfg;
  std::string config_path = v.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv("AFFQ_CONFIG")) config_path = env;
  }
  if (!config_path.empty()) {
    try {
      affq::merge_config(cfg, json::parse(slurp(config_path)));
    } catch (const json::exception& e) {
      throw affq::ParseError("bad config '" + config_path + "': " + e.what());
    }
  }
  // Explicit flags override the config file.
  const CLI::App* sub = app.get_subcommand("verify");
  auto given = [&](const char* name) { return sub->count(name) > 0; };
  if (given("--seed")) cfg.seed = v.cfg.seed;
  if (given("--truncation")) cfg.truncation = v.cfg.truncation;
  if (given("--taper")) cfg.taper = v.cfg.taper;
  if (given("--S")) cfg.S = v.cfg.S;
  if (given("--n")) cfg.n = v.cfg.n;
  if (given("--sigma")) cfg.sigma = v.cfg.sigma;
  if (given("--evolve-S")) cfg.evolve_S = v.cfg.evolve_S;
  if (given("--steps")) cfg.steps = v.cfg.steps;
  if (given("--format")) cfg.format = v.cfg.format;
  if (given("--p-min")) cfg.grid.p_min = v.cfg.grid.p_min;
  if (given("--p-max")) cfg.grid.p_max = v.cfg.grid.p_max;
  if (given("--q-min")) cfg.grid.q_min = v.cfg.grid.q_min;
  if (given("--q-max")) cfg.grid.q_max = v.cfg.grid.q_max;
  if (given("--n-p")) cfg.grid.n_p = v.cfg.grid.n_p;
  if (given("--n-q")) cfg.grid.n_q = v.cfg.grid.n_q;
  if (given("--lie-samples")) cfg.lie_samples = v.cfg.lie_samples;
  if (given("--orbit-samples")) cfg.orbit_samples = v.cfg.orbit_samples;
  if (given("--group-samples")) cfg.group_samples = v.cfg.group_samples;
  if (given("--derivative")) affq::merge_config(cfg, json{{"derivative", v.derivative}});
  if (given("--evolution")) affq::merge_config(cfg, json{{"evolution", v.evolution}});
  cfg.alpha = v.alpha;
  cfg.beta = v.beta;
  cfg.t = v.t;
  cfg.validate();

  const auto records = affq::run_suite(v.suite, cfg);

  std::ofstream file;
  std::ostream* report = &std::cout;
  std::ostream* summary = &std::cerr;
  if (!v.report.empty() && v.report != "-") {
    file.open(v.report, std::ios::binary);
    if (!file) throw affq::ParseError("cannot write '" + v.report + "'");
    report = &file;
    summary = &std::cout;
  }

  if (cfg.format == "csv") *report << "test,discrepancy,tolerance,pass,params\n";
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (!r.pass) ++failed;
    if (cfg.format == "csv") {
      std::ostringstream d;
      d.precision(17);
      d << r.discrepancy << ',' << r.tolerance;
      *report << r.test << ',' << d.str() << ',' << (r.pass ? "true" : "false") << ',' << csv_quote(r.params.dump())
              << '\n';
    } else {
      emit(*report, json(r));
    }
  }
  for (const auto& r : records)
    if (!r.pass) *summary << "FAIL " << r.test << ' ' << r.params.dump() << " discrepancy " << r.discrepancy << '\n';
  *summary << v.suite << ": " << records.size() - failed << '/' << records.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantization of the affine group: orbits, star products, generators, representations"};
  app.require_subcommand(1);

  OrbitArgs orbit;
  auto* c_orbit = app.add_subcommand("orbit", "classify a coadjoint point and optionally act on it");
  c_orbit->add_option("--x", orbit.x, "x coordinate (rational)")->required();
  c_orbit->add_option("--y", orbit.y, "y coordinate (rational)")->required();
  c_orbit->add_option("--act", orbit.act, "exact group element a=..,b=..");
  c_orbit->add_option("--act-exp", orbit.act_exp, "act by exp(Z), Z given as alpha=..,beta=..");

  StarArgs star;
  auto* c_star = app.add_subcommand("star", "exact star product of two symbols");
  c_star->add_option("--u", star.u, "left symbol, JSON or @file")->required();
  c_star->add_option("--v", star.v, "right symbol, JSON or @file")->required();
  c_star->add_flag("--commutator", star.commutator, "print u*v - v*u instead");

  LhatArgs lhat;
  auto* c_lhat = app.add_subcommand("lhat", "print or apply the quantized generator");
  c_lhat->add_option("--alpha", lhat.alpha, "X component")->required();
  c_lhat->add_option("--beta", lhat.beta, "Y component")->required();
  c_lhat->add_option("--grid", lhat.grid, "grid file to act on (PQ grids are Fourier transformed first)");
  c_lhat->add_option("--out", lhat.out, "output grid file, default stdout");
  c_lhat->add_option("--format", lhat.format, "output grid format")->check(CLI::IsMember({"csv", "bin"}));
  c_lhat->add_option("--scheme", lhat.scheme, "derivative scheme")->check(CLI::IsMember({"spectral", "fd"}));
  c_lhat->add_flag("--to-s", lhat.to_s, "resample XQ input to (s,t) before applying");

  RepArgs rep;
  auto* c_rep = app.add_subcommand("rep", "apply T(g), T(exp tZ) or evolve the Cauchy problem");
  c_rep->add_option("mode", rep.mode, "apply | one-param | evolve")
      ->required()
      ->check(CLI::IsMember({"apply", "one-param", "evolve"}));
  c_rep->add_option("--a", rep.a, "group element a > 0");
  c_rep->add_option("--b", rep.b, "group element b");
  c_rep->add_option("--alpha", rep.alpha, "X component of Z");
  c_rep->add_option("--beta", rep.beta, "Y component of Z");
  c_rep->add_option("--t", rep.t, "time");
  c_rep->add_option("--sigma", rep.sigma, "half-line sign")->check(CLI::IsMember({1, -1}));
  c_rep->add_option("--S", rep.S, "lattice half-width in s");
  c_rep->add_option("--n", rep.n, "lattice points");
  c_rep->add_option("--steps", rep.steps, "evolution steps");
  c_rep->add_option("--backend", rep.backend, "evolution backend")->check(CLI::IsMember({"characteristics", "rk4"}));
  c_rep->add_option("--scheme", rep.scheme, "RK4 derivative scheme")->check(CLI::IsMember({"spectral", "fd"}));
  c_rep->add_option("--in", rep.in, "input half-line CSV");
  c_rep->add_option("--gaussian", rep.gaussian, "input exp(-(s-c)^2/(2w^2)) as c,w when --in is absent");
  c_rep->add_option("--out", rep.out, "output half-line CSV, default stdout");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "run a verification suite; exit status 1 if any check fails");
  c_ver->add_option("suite", ver.suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"lie-hom", "conjugation", "generator", "exponentiate", "unitarity", "all"}));
  c_ver->add_option("--config", ver.config, "JSON config file (default $AFFQ_CONFIG)");
  c_ver->add_option("--report", ver.report, "write the report here; the summary then goes to stdout");
  c_ver->add_option("--seed", ver.cfg.seed, "random seed");
  c_ver->add_option("--format", ver.cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  c_ver->add_option("--truncation", ver.cfg.truncation, "series truncation order R");
  c_ver->add_option("--taper", ver.cfg.taper, "cosine taper fraction");
  c_ver->add_option("--derivative", ver.derivative, "grid derivative scheme")->check(CLI::IsMember({"spectral", "fd"}));
  c_ver->add_option("--evolution", ver.evolution, "evolution backends")
      ->check(CLI::IsMember({"both", "rk4", "characteristics"}));
  c_ver->add_option("--S", ver.cfg.S, "half-line lattice half-width");
  c_ver->add_option("--evolve-S", ver.cfg.evolve_S, "lattice half-width for evolution checks");
  c_ver->add_option("--n", ver.cfg.n, "half-line lattice points");
  c_ver->add_option("--sigma", ver.cfg.sigma, "half-line sign, 0 for both")->check(CLI::IsMember({-1, 0, 1}));
  c_ver->add_option("--steps", ver.cfg.steps, "evolution steps");
  c_ver->add_option("--p-min", ver.cfg.grid.p_min);
  c_ver->add_option("--p-max", ver.cfg.grid.p_max);
  c_ver->add_option("--q-min", ver.cfg.grid.q_min);
  c_ver->add_option("--q-max", ver.cfg.grid.q_max);
  c_ver->add_option("--n-p", ver.cfg.grid.n_p);
  c_ver->add_option("--n-q", ver.cfg.grid.n_q);
  c_ver->add_option("--lie-samples", ver.cfg.lie_samples);
  c_ver->add_option("--orbit-samples", ver.cfg.orbit_samples);
  c_ver->add_option("--group-samples", ver.cfg.group_samples);
  c_ver->add_option("--alpha", ver.alpha, "single exponentiate case: X component");
  c_ver->add_option("--beta", ver.beta, "single exponentiate case: Y component");
  c_ver->add_option("--t", ver.t, "single exponentiate case: time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_orbit) return run_orbit(orbit);
    if (*c_star) return run_star(star);
    if (*c_lhat) return run_lhat(lhat);
    if (*c_rep) return run_rep(rep);
    if (*c_ver) return run_verify(ver, app);
  } catch (const affq::Error& e) {
    std::cerr << "affq: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "affq: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
