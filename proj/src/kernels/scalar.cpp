#include "gainsched/kernels/kernels.hpp"

namespace gainsched::kernels::scalar {

double squared_l2(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double sum_squares(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void scale(double* a, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void lerp(const double* a, const double* b, double t, double* out,
          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + (b[i] - a[i]) * t;
}

void pd_torque(const double* kp, const double* kd, const double* q_ref,
               const double* q, const double* qd_ref, const double* qd,
               const double* tau_ff, double* tau_out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    tau_out[i] =
        kp[i] * (q_ref[i] - q[i]) + kd[i] * (qd_ref[i] - qd[i]) + tau_ff[i];
  }
}

const KernelTable& table() {
  static const KernelTable t{squared_l2, sum_squares, scale, lerp, pd_torque};
  return t;
}

}  // namespace gainsched::kernels::scalar
