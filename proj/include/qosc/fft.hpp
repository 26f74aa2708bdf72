#pragma once

#include <vector>

#include "qosc/grid.hpp"

namespace qosc {

// 2D complex FFT on the y-outer row-major layout used by QuantumState.
// Plans are built with FFTW_ESTIMATE against buffers owned by this object,
// so transform results are reproducible run to run and independent of
// thread count.  Not safe for concurrent use from multiple threads.
class Fft2D {
 public:
  Fft2D(int nx, int ny);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  void forward(const cplx* in, cplx* out);   // unnormalized
  void backward(const cplx* in, cplx* out);  // unnormalized (scale by 1/(nx*ny))

  void forward(std::vector<cplx>& data);     // in place, unnormalized
  void backward_scaled(std::vector<cplx>& data);  // in place, includes 1/(nx*ny)

  // Batched 1D transforms along one axis (all rows or all columns in one
  // call), for mixed position/frequency representations such as shears.
  void forward_x(std::vector<cplx>& data);
  void backward_x_scaled(std::vector<cplx>& data);  // includes 1/nx
  void forward_y(std::vector<cplx>& data);
  void backward_y_scaled(std::vector<cplx>& data);  // includes 1/ny

 private:
  int nx_, ny_;
  void* buf_in_;
  void* buf_out_;
  void* plan_fwd_;
  void* plan_bwd_;
  void* plan_fwd_x_;
  void* plan_bwd_x_;
  void* plan_fwd_y_;
  void* plan_bwd_y_;

  void run_1d(void* plan, std::vector<cplx>& data, double scale);
};

// Process-lifetime plan cache keyed by grid shape.
Fft2D& fft_for(int nx, int ny);

}  // namespace qosc
