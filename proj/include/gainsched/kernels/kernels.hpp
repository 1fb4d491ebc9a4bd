#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops shared by the embedding scan, the joint-space
// PD law and the gain scheduler. Every kernel exists twice: a scalar
// reference implementation (the ground truth the tests compare against)
// and an AVX2 variant picked at runtime when the CPU supports it.

namespace gainsched::kernels {

enum class Backend { scalar, avx2 };

const char* to_string(Backend b);

struct KernelTable {
  double (*squared_l2)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  void (*scale)(double* a, std::size_t n, double s);
  void (*lerp)(const double* a, const double* b, double t, double* out,
               std::size_t n);
  void (*pd_torque)(const double* kp, const double* kd, const double* q_ref,
                    const double* q, const double* qd_ref, const double* qd,
                    const double* tau_ff, double* tau_out, std::size_t n);
};

namespace scalar {
double squared_l2(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void scale(double* a, std::size_t n, double s);
void lerp(const double* a, const double* b, double t, double* out,
          std::size_t n);
void pd_torque(const double* kp, const double* kd, const double* q_ref,
               const double* q, const double* qd_ref, const double* qd,
               const double* tau_ff, double* tau_out, std::size_t n);
const KernelTable& table();
}  // namespace scalar

namespace avx2 {
bool available();  // compiled in AND supported by this CPU
const KernelTable& table();
}  // namespace avx2

/// Table currently selected for dispatch. Defaults to the widest backend the
/// CPU supports; the GAINSCHED_BACKEND env var ("scalar"/"avx2") overrides.
const KernelTable& active();
Backend active_backend();
bool set_backend(Backend b);  // false if the backend is unavailable

// Dispatched entry points.
inline double squared_l2(const double* a, const double* b, std::size_t n) {
  return active().squared_l2(a, b, n);
}
inline double sum_squares(const double* a, std::size_t n) {
  return active().sum_squares(a, n);
}
inline void scale(double* a, std::size_t n, double s) {
  active().scale(a, n, s);
}
inline void lerp(const double* a, const double* b, double t, double* out,
                 std::size_t n) {
  active().lerp(a, b, t, out, n);
}
inline void pd_torque(const double* kp, const double* kd, const double* q_ref,
                      const double* q, const double* qd_ref, const double* qd,
                      const double* tau_ff, double* tau_out, std::size_t n) {
  active().pd_torque(kp, kd, q_ref, q, qd_ref, qd, tau_ff, tau_out, n);
}

}  // namespace gainsched::kernels
