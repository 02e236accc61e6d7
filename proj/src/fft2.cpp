#include "fft2.hpp"

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace tmscat::internal {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft2::Fft2(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("Fft2: transform size must be positive");
  }
  proto_ = make_buffer();
  auto* raw = reinterpret_cast<fftw_complex*>(proto_.get());
  std::lock_guard<std::mutex> lock(planner_mutex());
  fwd_ = fftw_plan_dft_2d(rows_, cols_, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  inv_ = fftw_plan_dft_2d(rows_, cols_, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (fwd_ == nullptr || inv_ == nullptr) {
    throw std::runtime_error("Fft2: FFTW plan creation failed");
  }
}

Fft2::~Fft2() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_ != nullptr) fftw_destroy_plan(fwd_);
  if (inv_ != nullptr) fftw_destroy_plan(inv_);
}

Fft2::Buffer Fft2::make_buffer() const {
  const std::size_t count =
      static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  auto* p = static_cast<std::complex<double>*>(
      fftw_malloc(count * sizeof(std::complex<double>)));
  if (p == nullptr) throw std::bad_alloc();
  std::memset(p, 0, count * sizeof(std::complex<double>));
  return Buffer(p);
}

void Fft2::forward(std::complex<double>* data) const {
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(fwd_, raw, raw);
}

void Fft2::inverse(std::complex<double>* data) const {
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(inv_, raw, raw);
}

}  // namespace tmscat::internal
