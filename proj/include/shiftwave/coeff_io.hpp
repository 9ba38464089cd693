#pragma once

#include "shiftwave/dualtree.hpp"
#include "shiftwave/dualtree2d.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace shiftwave::io {

using Metadata = std::map<std::string, std::string>;

// JSON: {format, spec, levels, grid, coefficients: per level [{re, im}],
// coarse, coarse_prime, metadata}.
void write_coeffs_json(std::ostream& os, const DualTreeCoeffs1D& c, const Metadata& meta = {});
DualTreeCoeffs1D read_coeffs_json(std::istream& is);

// Orientation-major: coefficients[l][level] = {rows, cols, values}.
void write_coeffs2d_json(std::ostream& os, const DualTreeCoeffs2D& c, const Metadata& meta = {});
DualTreeCoeffs2D read_coeffs2d_json(std::istream& is);

void write_coeffs_file(const std::string& path, const DualTreeCoeffs1D& c, const Metadata& meta = {});
DualTreeCoeffs1D read_coeffs_file(const std::string& path);
void write_coeffs2d_file(const std::string& path, const DualTreeCoeffs2D& c, const Metadata& meta = {});
DualTreeCoeffs2D read_coeffs2d_file(const std::string& path);

}  // namespace shiftwave::io
