#pragma once

#include <fftw3.h>

#include <complex>
#include <memory>

namespace tmscat::internal {

/// Minimal RAII wrapper around FFTW's 2-D complex transforms. Plan creation
/// is serialized behind a global mutex (the FFTW planner is not thread-safe);
/// execution uses the new-array interface on fftw_malloc'd buffers so const
/// applies may run concurrently on distinct buffers.
class Fft2 {
 public:
  Fft2(int rows, int cols);
  ~Fft2();
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  struct Deleter {
    void operator()(std::complex<double>* p) const noexcept {
      fftw_free(p);
    }
  };
  using Buffer = std::unique_ptr<std::complex<double>[], Deleter>;

  /// Zero-initialized rows*cols buffer with FFTW-compatible alignment.
  Buffer make_buffer() const;

  /// In-place unnormalized transforms; `data` must come from make_buffer().
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

 private:
  int rows_, cols_;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
  Buffer proto_;  // buffer the plans were created on
};

}  // namespace tmscat::internal
