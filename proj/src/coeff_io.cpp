#include "shiftwave/coeff_io.hpp"

#include "json.hpp"

#include <fstream>

namespace shiftwave::io {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat1D = "shiftwave-dualtree1d";
constexpr const char* kFormat2D = "shiftwave-dualtree2d";

json spec_json(const SplineSpec& s) {
  return {{"genus", genus_name(s.genus)}, {"alpha", s.degree_alpha}, {"tau", s.shift_tau}};
}

json grid_json(const Grid1D& g) { return {{"n", g.n}, {"x0", g.x0}, {"dx", g.dx}}; }

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({{"re", z.real()}, {"im", z.imag()}});
  return a;
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

SplineSpec parse_spec(const json& j) {
  SplineSpec s;
  s.genus = parse_genus(field<std::string>(j, "genus", "spec"));
  s.degree_alpha = field<double>(j, "alpha", "spec");
  s.shift_tau = field<double>(j, "tau", "spec");
  return s;
}

Grid1D parse_grid(const json& j, const std::string& where) {
  try {
    return Grid1D(field<std::size_t>(j, "n", where), field<double>(j, "x0", where), field<double>(j, "dx", where));
  } catch (const GridError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::vector<cplx> parse_complex_array(const json& a, const std::string& where) {
  if (!a.is_array()) throw ParseError(where + ": expected an array");
  std::vector<cplx> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    out.emplace_back(field<double>(a[i], "re", w), field<double>(a[i], "im", w));
  }
  return out;
}

json parse_document(std::istream& is, const char* format) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  std::string f = field<std::string>(j, "format", "coefficient file");
  if (f != format) throw ParseError("coefficient file has format '" + f + "', expected '" + format + "'");
  return j;
}

json meta_json(const Metadata& meta) {
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  return m;
}

}  // namespace

void write_coeffs_json(std::ostream& os, const DualTreeCoeffs1D& c, const Metadata& meta) {
  json j;
  j["format"] = kFormat1D;
  j["spec"] = spec_json(c.spec);
  j["levels"] = c.levels;
  j["grid"] = grid_json(c.grid);
  j["coefficients"] = json::array();
  for (const auto& lv : c.c) j["coefficients"].push_back(complex_array(lv));
  j["coarse"] = c.coarse;
  j["coarse_prime"] = c.coarse_prime;
  j["metadata"] = meta_json(meta);
  os << j.dump(1) << '\n';
}

DualTreeCoeffs1D read_coeffs_json(std::istream& is) {
  json j = parse_document(is, kFormat1D);
  DualTreeCoeffs1D c;
  c.spec = parse_spec(field<json>(j, "spec", "coefficient file"));
  c.levels = field<int>(j, "levels", "coefficient file");
  c.grid = parse_grid(field<json>(j, "grid", "coefficient file"), "grid");
  json levels = field<json>(j, "coefficients", "coefficient file");
  if (!levels.is_array() || levels.size() != static_cast<std::size_t>(c.levels))
    throw ParseError("coefficient file: 'coefficients' must hold one array per level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    c.c.push_back(parse_complex_array(levels[i], "coefficients[" + std::to_string(i) + "]"));
    if (c.c.back().size() != (c.grid.n >> (i + 1)))
      throw ParseError("coefficient file: level " + std::to_string(i + 1) + " has the wrong length");
  }
  c.coarse = field<std::vector<double>>(j, "coarse", "coefficient file");
  c.coarse_prime = field<std::vector<double>>(j, "coarse_prime", "coefficient file");
  return c;
}

void write_coeffs2d_json(std::ostream& os, const DualTreeCoeffs2D& c, const Metadata& meta) {
  json j;
  j["format"] = kFormat2D;
  j["spec"] = spec_json(c.spec);
  j["levels"] = c.levels;
  j["grid_x"] = grid_json(c.grid_x);
  j["grid_y"] = grid_json(c.grid_y);
  j["coefficients"] = json::array();
  for (int ell = 0; ell < kOrientations; ++ell) {
    json per_level = json::array();
    for (int lv = 0; lv < c.levels; ++lv) {
      per_level.push_back({{"rows", c.grid_y.n >> (lv + 1)},
                           {"cols", c.grid_x.n >> (lv + 1)},
                           {"values", complex_array(c.c[ell][lv])}});
    }
    j["coefficients"].push_back(per_level);
  }
  j["coarse"] = json::array();
  for (const auto& p : c.coarse) j["coarse"].push_back(p);
  j["metadata"] = meta_json(meta);
  os << j.dump(1) << '\n';
}

DualTreeCoeffs2D read_coeffs2d_json(std::istream& is) {
  json j = parse_document(is, kFormat2D);
  DualTreeCoeffs2D c;
  c.spec = parse_spec(field<json>(j, "spec", "coefficient file"));
  c.levels = field<int>(j, "levels", "coefficient file");
  c.grid_x = parse_grid(field<json>(j, "grid_x", "coefficient file"), "grid_x");
  c.grid_y = parse_grid(field<json>(j, "grid_y", "coefficient file"), "grid_y");
  json all = field<json>(j, "coefficients", "coefficient file");
  if (!all.is_array() || all.size() != kOrientations)
    throw ParseError("coefficient file: 'coefficients' must hold six orientations");
  for (int ell = 0; ell < kOrientations; ++ell) {
    const json& per_level = all[ell];
    if (!per_level.is_array() || per_level.size() != static_cast<std::size_t>(c.levels))
      throw ParseError("coefficient file: orientation " + std::to_string(ell + 1) + " needs one entry per level");
    for (int lv = 0; lv < c.levels; ++lv) {
      std::string where = "coefficients[" + std::to_string(ell) + "][" + std::to_string(lv) + "]";
      auto rows = field<std::size_t>(per_level[lv], "rows", where);
      auto cols = field<std::size_t>(per_level[lv], "cols", where);
      auto vals = parse_complex_array(field<json>(per_level[lv], "values", where), where);
      if (rows != (c.grid_y.n >> (lv + 1)) || cols != (c.grid_x.n >> (lv + 1)) || vals.size() != rows * cols)
        throw ParseError(where + ": array shape does not match the grid");
      c.c[ell].push_back(std::move(vals));
    }
  }
  json coarse = field<json>(j, "coarse", "coefficient file");
  if (!coarse.is_array() || coarse.size() != 4) throw ParseError("coefficient file: 'coarse' must hold four arrays");
  for (int q = 0; q < 4; ++q) {
    try {
      c.coarse[q] = coarse[q].get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ParseError("coefficient file: coarse[" + std::to_string(q) + "] must be an array of numbers");
    }
  }
  return c;
}

void write_coeffs_file(const std::string& path, const DualTreeCoeffs1D& c, const Metadata& meta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_coeffs_json(out, c, meta);
}

DualTreeCoeffs1D read_coeffs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_coeffs_json(in);
}

void write_coeffs2d_file(const std::string& path, const DualTreeCoeffs2D& c, const Metadata& meta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_coeffs2d_json(out, c, meta);
}

DualTreeCoeffs2D read_coeffs2d_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_coeffs2d_json(in);
}

}  // namespace shiftwave::io
