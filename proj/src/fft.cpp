#include "shiftwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace shiftwave::fft {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are made once per shape with FFTW_UNALIGNED so they can
// be reused with any std::vector buffer.
std::mutex plan_mutex;
std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans;

fftw_plan get_plan(std::size_t nx, std::size_t ny, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(nx, ny, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::vector<std::complex<double>> scratch(nx * ny);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = ny == 0
      ? fftw_plan_dft_1d(static_cast<int>(nx), buf, buf, sign, flags)
      : fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), buf, buf, sign, flags);
  plans.emplace(key, p);
  return p;
}

void run(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny, int sign) {
  if (data.empty()) return;
  fftw_plan p = get_plan(nx, ny, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) { run(data, data.size(), 0, FFTW_FORWARD); }
void inverse(std::vector<std::complex<double>>& data) { run(data, data.size(), 0, FFTW_BACKWARD); }

void forward2(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny) {
  run(data, nx, ny, FFTW_FORWARD);
}
void inverse2(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny) {
  run(data, nx, ny, FFTW_BACKWARD);
}

}  // namespace shiftwave::fft
