#include "gainsched/kernels/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace gainsched::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d sum2 = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, shuf));
}

double squared_l2_impl(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    __m256d d = _mm256_sub_pd(va, vb);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    out += d * d;
  }
  return out;
}

double sum_squares_impl(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * a[i];
  return out;
}

void scale_impl(double* a, std::size_t n, double s) {
  __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  }
  for (; i < n; ++i) a[i] *= s;
}

void lerp_impl(const double* a, const double* b, double t, double* out,
               std::size_t n) {
  __m256d vt = _mm256_set1_pd(t);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(_mm256_sub_pd(vb, va), vt, va));
  }
  for (; i < n; ++i) out[i] = a[i] + (b[i] - a[i]) * t;
}

void pd_torque_impl(const double* kp, const double* kd, const double* q_ref,
                    const double* q, const double* qd_ref, const double* qd,
                    const double* tau_ff, double* tau_out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d eq = _mm256_sub_pd(_mm256_loadu_pd(q_ref + i),
                               _mm256_loadu_pd(q + i));
    __m256d ed = _mm256_sub_pd(_mm256_loadu_pd(qd_ref + i),
                               _mm256_loadu_pd(qd + i));
    __m256d t = _mm256_fmadd_pd(_mm256_loadu_pd(kp + i), eq,
                                _mm256_loadu_pd(tau_ff + i));
    t = _mm256_fmadd_pd(_mm256_loadu_pd(kd + i), ed, t);
    _mm256_storeu_pd(tau_out + i, t);
  }
  for (; i < n; ++i) {
    tau_out[i] =
        kp[i] * (q_ref[i] - q[i]) + kd[i] * (qd_ref[i] - qd[i]) + tau_ff[i];
  }
}

}  // namespace

bool available() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table() {
  static const KernelTable t{squared_l2_impl, sum_squares_impl, scale_impl,
                             lerp_impl, pd_torque_impl};
  return t;
}

}  // namespace gainsched::kernels::avx2

#else  // no AVX2 at compile time: dispatch falls back to scalar

namespace gainsched::kernels::avx2 {
bool available() { return false; }
const KernelTable& table() { return scalar::table(); }
}  // namespace gainsched::kernels::avx2

#endif
