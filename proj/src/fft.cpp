#include "qosc/fft.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include <fftw3.h>

namespace qosc {

Fft2D::Fft2D(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("fft: grid too small");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  buf_in_ = fftw_malloc(sizeof(fftw_complex) * n);
  buf_out_ = fftw_malloc(sizeof(fftw_complex) * n);
  if (!buf_in_ || !buf_out_) throw std::bad_alloc();
  // FFTW is row-major with the first dimension slowest, hence (ny, nx).
  plan_fwd_ = fftw_plan_dft_2d(ny, nx, static_cast<fftw_complex*>(buf_in_),
                               static_cast<fftw_complex*>(buf_out_), FFTW_FORWARD,
                               FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(ny, nx, static_cast<fftw_complex*>(buf_in_),
                               static_cast<fftw_complex*>(buf_out_), FFTW_BACKWARD,
                               FFTW_ESTIMATE);

  auto* bin = static_cast<fftw_complex*>(buf_in_);
  auto* bout = static_cast<fftw_complex*>(buf_out_);
  int n_x[1] = {nx};
  int n_y[1] = {ny};
  plan_fwd_x_ = fftw_plan_many_dft(1, n_x, ny, bin, nullptr, 1, nx, bout, nullptr, 1, nx,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_x_ = fftw_plan_many_dft(1, n_x, ny, bin, nullptr, 1, nx, bout, nullptr, 1, nx,
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
  plan_fwd_y_ = fftw_plan_many_dft(1, n_y, nx, bin, nullptr, nx, 1, bout, nullptr, nx, 1,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_y_ = fftw_plan_many_dft(1, n_y, nx, bin, nullptr, nx, 1, bout, nullptr, nx, 1,
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_ || !plan_fwd_x_ || !plan_bwd_x_ || !plan_fwd_y_ || !plan_bwd_y_)
    throw std::runtime_error("fft: plan creation failed");
}

Fft2D::~Fft2D() {
  for (void* p : {plan_fwd_, plan_bwd_, plan_fwd_x_, plan_bwd_x_, plan_fwd_y_, plan_bwd_y_})
    fftw_destroy_plan(static_cast<fftw_plan>(p));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Fft2D::forward(const cplx* in, cplx* out) {
  const std::size_t bytes = sizeof(cplx) * static_cast<std::size_t>(nx_) * ny_;
  std::memcpy(buf_in_, in, bytes);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_out_, bytes);
}

void Fft2D::backward(const cplx* in, cplx* out) {
  const std::size_t bytes = sizeof(cplx) * static_cast<std::size_t>(nx_) * ny_;
  std::memcpy(buf_in_, in, bytes);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, buf_out_, bytes);
}

void Fft2D::forward(std::vector<cplx>& data) { forward(data.data(), data.data()); }

void Fft2D::backward_scaled(std::vector<cplx>& data) {
  backward(data.data(), data.data());
  const double s = 1.0 / (static_cast<double>(nx_) * ny_);
  for (auto& z : data) z *= s;
}

void Fft2D::run_1d(void* plan, std::vector<cplx>& data, double scale) {
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  if (data.size() != n) throw std::invalid_argument("fft: buffer size mismatch");
  std::memcpy(buf_in_, data.data(), sizeof(cplx) * n);
  fftw_execute(static_cast<fftw_plan>(plan));
  std::memcpy(data.data(), buf_out_, sizeof(cplx) * n);
  if (scale != 1.0)
    for (auto& z : data) z *= scale;
}

void Fft2D::forward_x(std::vector<cplx>& data) { run_1d(plan_fwd_x_, data, 1.0); }
void Fft2D::backward_x_scaled(std::vector<cplx>& data) { run_1d(plan_bwd_x_, data, 1.0 / nx_); }
void Fft2D::forward_y(std::vector<cplx>& data) { run_1d(plan_fwd_y_, data, 1.0); }
void Fft2D::backward_y_scaled(std::vector<cplx>& data) { run_1d(plan_bwd_y_, data, 1.0 / ny_); }

Fft2D& fft_for(int nx, int ny) {
  static std::map<std::pair<int, int>, std::unique_ptr<Fft2D>> cache;
  auto& slot = cache[{nx, ny}];
  if (!slot) slot = std::make_unique<Fft2D>(nx, ny);
  return *slot;
}

}  // namespace qosc
