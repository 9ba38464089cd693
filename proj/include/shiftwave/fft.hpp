#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace shiftwave::fft {

// Unnormalized in-place DFTs in standard order.
// forward: X_k = sum x_p exp(-2 pi j k p / n); inverse uses +j and no 1/n.
void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);

// Row-major 2D transforms of an ny-by-nx array.
void forward2(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny);
void inverse2(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny);

}  // namespace shiftwave::fft
