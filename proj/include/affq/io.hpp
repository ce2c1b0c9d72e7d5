#pragma once

// Serialization.
//
//  * Lie-algebra, group and coadjoint values: JSON objects with fields
//    "alpha"/"beta", "a"/"b", "x"/"y". Floating values are JSON numbers,
//    exact values "num/den" strings.
//  * Symbols: JSON list of {"m", "k", "re", "im"} with "num/den" strings.
//  * Grids: a JSON header line followed by either CSV (one line per row,
//    "re,im" pairs) or little-endian float64 interleaved re/im.
//  * Half-line functions: "# {sigma, S, n}" header, then "s,re,im" lines.

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "affq/grid.hpp"
#include "affq/lie_aff.hpp"
#include "affq/representation.hpp"
#include "affq/symbol.hpp"

namespace affq {

using json = nlohmann::json;

namespace detail {
inline json scalar_to_json(double v) { return v; }
inline json scalar_to_json(const Rational& v) { return format_rational(v); }

template <class T>
T scalar_from_json(const json& j);

template <>
inline double scalar_from_json<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw ParseError("expected a number, got " + j.dump());
}

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return Rational(j.get<double>());  // exact binary value
  throw ParseError("expected a rational, got " + j.dump());
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}
}  // namespace detail

template <class T>
void to_json(json& j, const LieAlgebraElement<T>& z) {
  j = json{{"alpha", detail::scalar_to_json(z.alpha)}, {"beta", detail::scalar_to_json(z.beta)}};
}
template <class T>
void from_json(const json& j, LieAlgebraElement<T>& z) {
  z.alpha = detail::scalar_from_json<T>(detail::field(j, "alpha"));
  z.beta = detail::scalar_from_json<T>(detail::field(j, "beta"));
}

template <class T>
void to_json(json& j, const GroupElement<T>& g) {
  j = json{{"a", detail::scalar_to_json(g.a())}, {"b", detail::scalar_to_json(g.b())}};
}
template <class T>
void from_json(const json& j, GroupElement<T>& g) {
  g = GroupElement<T>(detail::scalar_from_json<T>(detail::field(j, "a")),
                      detail::scalar_from_json<T>(detail::field(j, "b")));
}

template <class T>
void to_json(json& j, const CoadjointPoint<T>& f) {
  j = json{{"x", detail::scalar_to_json(f.x_coad)}, {"y", detail::scalar_to_json(f.y_coad)}};
}
template <class T>
void from_json(const json& j, CoadjointPoint<T>& f) {
  f.x_coad = detail::scalar_from_json<T>(detail::field(j, "x"));
  f.y_coad = detail::scalar_from_json<T>(detail::field(j, "y"));
}

template <class T>
void to_json(json& j, const OrbitId<T>& id) {
  j = json{{"orbit", to_string(id.kind)}};
  if (id.kind == OrbitKind::Point) j["lambda"] = detail::scalar_to_json(id.lambda);
}

inline void to_json(json& j, const ExpPolySymbol& u) {
  j = json::array();
  for (const auto& [key, c] : u.terms())
    j.push_back(json{{"m", key.first}, {"k", key.second}, {"re", format_rational(c.re)}, {"im", format_rational(c.im)}});
}

inline void from_json(const json& j, ExpPolySymbol& u) {
  if (!j.is_array()) throw ParseError("symbol must be a JSON array of terms");
  u = ExpPolySymbol();
  for (const auto& t : j) {
    const int m = detail::field(t, "m").get<int>();
    const int k = detail::field(t, "k").get<int>();
    if (m < 0) throw ParseError("symbol term with negative p-power");
    Rational re = t.contains("re") ? detail::scalar_from_json<Rational>(t.at("re")) : Rational(0);
    Rational im = t.contains("im") ? detail::scalar_from_json<Rational>(t.at("im")) : Rational(0);
    u.add_term(m, k, GaussianRational(std::move(re), std::move(im)));
  }
}

inline ExpPolySymbol parse_symbol(const std::string& text) {
  try {
    return json::parse(text).get<ExpPolySymbol>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed symbol JSON: ") + e.what());
  }
}

inline void to_json(json& j, const GridSpec& s) {
  j = json{{"p_min", s.p_min}, {"p_max", s.p_max}, {"q_min", s.q_min},
           {"q_max", s.q_max}, {"n_p", s.n_p},     {"n_q", s.n_q}};
}
inline void from_json(const json& j, GridSpec& s) {
  GridSpec d;
  s.p_min = j.value("p_min", d.p_min);
  s.p_max = j.value("p_max", d.p_max);
  s.q_min = j.value("q_min", d.q_min);
  s.q_max = j.value("q_max", d.q_max);
  s.n_p = j.value("n_p", d.n_p);
  s.n_q = j.value("n_q", d.n_q);
}

enum class GridFormat { Csv, Binary };

namespace detail {
inline json grid_header(const GridFunction& g, GridFormat format) {
  return json{{"format", format == GridFormat::Csv ? "affq-grid-csv" : "affq-grid-bin"},
              {"domain", to_string(g.domain())},
              {"spec", g.spec()},
              {"rows", g.rows()},
              {"cols", g.cols()}};
}

inline void put_f64_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
  out.write(bytes, 8);
}

inline double get_f64_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw ParseError("truncated binary grid data");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}
}  // namespace detail

inline void write_grid(std::ostream& out, const GridFunction& g, GridFormat format) {
  const json header = detail::grid_header(g, format);
  if (format == GridFormat::Binary) {
    out << header.dump() << '\n';
    for (const auto& v : g.values()) {
      detail::put_f64_le(out, v.real());
      detail::put_f64_le(out, v.imag());
    }
    return;
  }
  out << "# " << header.dump() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    auto row = g.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c].real() << ',' << row[c].imag();
    }
    out << '\n';
  }
}

/// Reads either layout; the header line decides which.
inline GridFunction read_grid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty grid file");
  if (line.rfind("# ", 0) == 0) line = line.substr(2);
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad grid header: ") + e.what());
  }
  const std::string format = header.value("format", "");
  GridFunction g(header.at("spec").get<GridSpec>(), parse_domain(header.at("domain").get<std::string>()));
  if (header.value("rows", g.rows()) != g.rows() || header.value("cols", g.cols()) != g.cols())
    throw ParseError("grid header shape disagrees with its spec");

  if (format == "affq-grid-bin") {
    for (auto& v : g.values()) {
      const double re = detail::get_f64_le(in);
      const double im = detail::get_f64_le(in);
      v = cplx(re, im);
    }
    return g;
  }
  if (format != "affq-grid-csv") throw ParseError("unknown grid format '" + format + "'");
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (!std::getline(in, line)) throw ParseError("grid CSV has too few rows");
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> nums;
    while (std::getline(ss, cell, ',')) nums.push_back(std::stod(cell));
    if (nums.size() != 2 * g.cols()) throw ParseError("grid CSV row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) = cplx(nums[2 * c], nums[2 * c + 1]);
  }
  return g;
}

inline void write_half_line(std::ostream& out, const HalfLineFunction& f) {
  const Lattice& lat = f.lattice();
  out << "# " << json{{"sigma", lat.sigma}, {"S", lat.S}, {"n", lat.n}}.dump() << '\n';
  out << "s,re,im\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t j = 0; j < lat.n; ++j) out << lat.s(j) << ',' << f[j].real() << ',' << f[j].imag() << '\n';
}

inline HalfLineFunction read_half_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw ParseError("half-line CSV needs a '# {json}' header");
  Lattice lat;
  try {
    const json h = json::parse(line.substr(2));
    lat.sigma = h.at("sigma").get<int>();
    lat.S = h.at("S").get<double>();
    lat.n = h.at("n").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad half-line header: ") + e.what());
  }
  HalfLineFunction f(lat);
  std::size_t j = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 's' || line[0] == '#') continue;
    if (j >= lat.n) throw ParseError("half-line CSV has more samples than the header declares");
    std::stringstream ss(line);
    std::string cell;
    std::array<double, 3> v{};
    for (auto& x : v) {
      if (!std::getline(ss, cell, ',')) throw ParseError("half-line CSV line needs s,re,im");
      x = std::stod(cell);
    }
    f[j++] = cplx(v[1], v[2]);
  }
  if (j != lat.n) throw ParseError("half-line CSV has fewer samples than the header declares");
  return f;
}

}  // namespace affq
