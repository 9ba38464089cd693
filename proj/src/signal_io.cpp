#include "shiftwave/signal_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace shiftwave::io {
namespace {

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

double parse_double(const std::string& s, std::size_t line, const char* column) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse " + column + " value '" + s + "'");
  }
}

void write_metadata(std::ostream& os, const std::string& metadata) {
  if (metadata.empty()) return;
  std::stringstream ss(metadata);
  std::string line;
  while (std::getline(ss, line)) os << "# " << line << '\n';
}

Grid1D infer_grid(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw ParseError("no samples");
  if (n < 8 || !is_power_of_two(n))
    throw ParseError("sample count " + std::to_string(n) + " is not a power of two >= 8");
  double dx = (xs.back() - xs.front()) / static_cast<double>(n - 1);
  if (!(dx > 0.0)) throw ParseError("x column must be strictly increasing");
  for (std::size_t p = 0; p < n; ++p) {
    double expect = xs.front() + static_cast<double>(p) * dx;
    if (std::abs(xs[p] - expect) > 1e-6 * dx)
      throw ParseError("row " + std::to_string(p + 1) + ": x column is not uniformly spaced");
  }
  return Grid1D(n, xs.front(), dx);
}

}  // namespace

void write_signal_csv(std::ostream& os, const SampledSignal1D& f, const std::string& metadata) {
  write_metadata(os, metadata);
  os << "x,re,im\n" << std::setprecision(17);
  for (std::size_t p = 0; p < f.values.size(); ++p)
    os << f.grid.x(p) << ',' << f.values[p].real() << ',' << f.values[p].imag() << '\n';
}

SampledSignal1D read_signal_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> xs;
  std::vector<cplx> vals;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header) {
      auto cols = split_commas(t);
      if (cols.size() != 3 || cols[0] != "x" || cols[1] != "re" || cols[2] != "im")
        throw ParseError("line " + std::to_string(lineno) + ": expected header 'x,re,im'");
      header = true;
      continue;
    }
    auto cols = split_commas(t);
    if (cols.size() != 3)
      throw ParseError("line " + std::to_string(lineno) + ": expected 3 columns, found " + std::to_string(cols.size()));
    xs.push_back(parse_double(cols[0], lineno, "x"));
    vals.emplace_back(parse_double(cols[1], lineno, "re"), parse_double(cols[2], lineno, "im"));
  }
  if (!header || xs.empty()) throw ParseError("no samples");
  Grid1D g = infer_grid(xs);
  return SampledSignal1D(g, std::move(vals));
}

void write_signal_swv1(std::ostream& os, const SampledSignal1D& f) {
  os.write("SWV1", 4);
  std::uint64_t n = f.grid.n;
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(&f.grid.x0), 8);
  os.write(reinterpret_cast<const char*>(&f.grid.dx), 8);
  for (const auto& v : f.values) {
    double re = v.real(), im = v.imag();
    os.write(reinterpret_cast<const char*>(&re), 8);
    os.write(reinterpret_cast<const char*>(&im), 8);
  }
}

SampledSignal1D read_signal_swv1(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "SWV1", 4) != 0) throw ParseError("byte 0: missing SWV1 magic");
  std::uint64_t n = 0;
  double x0 = 0, dx = 0;
  if (!is.read(reinterpret_cast<char*>(&n), 8)) throw ParseError("byte 4: truncated header");
  if (!is.read(reinterpret_cast<char*>(&x0), 8) || !is.read(reinterpret_cast<char*>(&dx), 8))
    throw ParseError("byte 12: truncated header");
  if (n == 0) throw ParseError("no samples");
  if (n > (1ull << 28)) throw ParseError("byte 4: implausible sample count " + std::to_string(n));
  Grid1D g;
  try {
    g = Grid1D(static_cast<std::size_t>(n), x0, dx);
  } catch (const GridError& e) {
    throw ParseError(std::string("byte 4: ") + e.what());
  }
  std::vector<cplx> vals(g.n);
  for (std::size_t p = 0; p < g.n; ++p) {
    double re, im;
    if (!is.read(reinterpret_cast<char*>(&re), 8) || !is.read(reinterpret_cast<char*>(&im), 8))
      throw ParseError("byte " + std::to_string(28 + 16 * p) + ": truncated sample data");
    vals[p] = {re, im};
  }
  return SampledSignal1D(g, std::move(vals));
}

SampledSignal1D read_signal_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  std::streamsize got = in.gcount();
  in.clear();
  in.seekg(0);
  if (got == 4 && std::memcmp(magic, "SWV1", 4) == 0) return read_signal_swv1(in);
  return read_signal_csv(in);
}

void write_signal_file(const std::string& path, const SampledSignal1D& f, const std::string& metadata) {
  bool binary = path.size() >= 5 && path.substr(path.size() - 5) == ".swv1";
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error("cannot write '" + path + "'");
  if (binary)
    write_signal_swv1(out, f);
  else
    write_signal_csv(out, f, metadata);
}

namespace {

// Reads the next whitespace-separated PGM header token, skipping comments.
std::string pgm_token(std::istream& is) {
  std::string tok;
  char c;
  while (is.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

SampledSignal2D make_image(std::size_t w, std::size_t h, std::vector<cplx> vals) {
  if (w == 0 || h == 0) throw ParseError("no samples");
  Grid1D gx, gy;
  try {
    gx = Grid1D(w, 0.0, 1.0);
    gy = Grid1D(h, 0.0, 1.0);
  } catch (const GridError& e) {
    throw ParseError(std::string("image size: ") + e.what());
  }
  return SampledSignal2D(gx, gy, std::move(vals));
}

SampledSignal2D read_pgm(std::istream& is) {
  std::string magic = pgm_token(is);
  bool binary = magic == "P5";
  std::size_t w = 0, h = 0, maxval = 0;
  try {
    w = std::stoul(pgm_token(is));
    h = std::stoul(pgm_token(is));
    maxval = std::stoul(pgm_token(is));
  } catch (const std::exception&) {
    throw ParseError("PGM header: malformed width/height/maxval");
  }
  if (maxval == 0 || maxval > 65535) throw ParseError("PGM header: maxval out of range");
  std::vector<cplx> vals(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    double v = 0;
    if (binary) {
      if (maxval < 256) {
        unsigned char b;
        if (!is.read(reinterpret_cast<char*>(&b), 1)) throw ParseError("PGM pixel " + std::to_string(i) + ": truncated data");
        v = b;
      } else {
        unsigned char b[2];
        if (!is.read(reinterpret_cast<char*>(b), 2)) throw ParseError("PGM pixel " + std::to_string(i) + ": truncated data");
        v = b[0] * 256.0 + b[1];
      }
    } else {
      std::string tok = pgm_token(is);
      if (tok.empty()) throw ParseError("PGM pixel " + std::to_string(i) + ": truncated data");
      try {
        v = std::stod(tok);
      } catch (const std::exception&) {
        throw ParseError("PGM pixel " + std::to_string(i) + ": bad value '" + tok + "'");
      }
    }
    vals[i] = v / static_cast<double>(maxval);
  }
  return make_image(w, h, std::move(vals));
}

SampledSignal2D read_csv_matrix(std::istream& is) {
  std::string line;
  std::size_t lineno = 0, width = 0, rows = 0;
  std::vector<cplx> vals;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = split_commas(t);
    if (width == 0) width = cols.size();
    if (cols.size() != width)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) + " columns, found " +
                       std::to_string(cols.size()));
    for (const auto& c : cols) vals.emplace_back(parse_double(c, lineno, "pixel"));
    ++rows;
  }
  return make_image(width, rows, std::move(vals));
}

}  // namespace

SampledSignal2D read_image_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  in.clear();
  in.seekg(0);
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(in);
  return read_csv_matrix(in);
}

void write_image_csv(std::ostream& os, const SampledSignal2D& f, const std::string& metadata) {
  write_metadata(os, metadata);
  os << std::setprecision(17);
  for (std::size_t iy = 0; iy < f.grid_y.n; ++iy) {
    for (std::size_t ix = 0; ix < f.grid_x.n; ++ix) {
      if (ix) os << ',';
      os << f.at(ix, iy).real();
    }
    os << '\n';
  }
}

void write_image_pgm(std::ostream& os, const SampledSignal2D& f, const std::string& metadata) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& v : f.values) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  double span = hi > lo ? hi - lo : 1.0;
  os << "P2\n";
  std::stringstream ss(metadata);
  std::string line;
  while (std::getline(ss, line)) os << "# " << line << '\n';
  os << "# range " << std::setprecision(17) << lo << ' ' << hi << '\n';
  os << f.grid_x.n << ' ' << f.grid_y.n << "\n65535\n";
  for (std::size_t iy = 0; iy < f.grid_y.n; ++iy) {
    for (std::size_t ix = 0; ix < f.grid_x.n; ++ix) {
      long q = std::lround((f.at(ix, iy).real() - lo) / span * 65535.0);
      os << (ix ? " " : "") << q;
    }
    os << '\n';
  }
}

void write_image_file(const std::string& path, const SampledSignal2D& f, const std::string& metadata) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  bool pgm = path.size() >= 4 && path.substr(path.size() - 4) == ".pgm";
  if (pgm)
    write_image_pgm(out, f, metadata);
  else
    write_image_csv(out, f, metadata);
}

}  // namespace shiftwave::io
