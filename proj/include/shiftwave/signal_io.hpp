#pragma once

#include "shiftwave/signal.hpp"

#include <iosfwd>
#include <string>

namespace shiftwave::io {

// CSV: header `x,re,im`, one row per sample. Lines starting with '#' are
// metadata and are skipped on read.
void write_signal_csv(std::ostream& os, const SampledSignal1D& f, const std::string& metadata = "");
SampledSignal1D read_signal_csv(std::istream& is);

// Binary: magic "SWV1", then little-endian u64 n, f64 x0, f64 dx and n
// (re, im) f64 pairs.
void write_signal_swv1(std::ostream& os, const SampledSignal1D& f);
SampledSignal1D read_signal_swv1(std::istream& is);

// Dispatches on the first four bytes.
SampledSignal1D read_signal_file(const std::string& path);
void write_signal_file(const std::string& path, const SampledSignal1D& f, const std::string& metadata = "");

// Images: PGM (P2 or P5) or CSV matrix (one image row per line). Pixel
// (ix, iy) sits at (ix, iy) on a unit-spaced grid; only real parts are
// written.
SampledSignal2D read_image_file(const std::string& path);
void write_image_csv(std::ostream& os, const SampledSignal2D& f, const std::string& metadata = "");
// Linear map of [lo, hi] to 0..maxval, where lo/hi are the data range.
void write_image_pgm(std::ostream& os, const SampledSignal2D& f, const std::string& metadata = "");
void write_image_file(const std::string& path, const SampledSignal2D& f, const std::string& metadata = "");

}  // namespace shiftwave::io
