#include <doctest.h>

#include <cmath>
#include <random>

#include "gainsched/kernels/kernels.hpp"
#include "test_util.hpp"

using namespace gainsched;

namespace {

// Sizes around the ones the pipeline actually uses (14, 28, 384) plus
// remainders that don't divide the vector width.
const std::size_t kSizes[] = {1, 3, 4, 7, 14, 28, 31, 384};

}  // namespace

TEST_CASE("scalar squared_l2 basics") {
  const double a[] = {1.0, 2.0, 3.0};
  const double b[] = {1.0, 0.0, 1.0};
  CHECK(kernels::scalar::squared_l2(a, b, 3) == doctest::Approx(8.0));
  CHECK(kernels::scalar::squared_l2(a, a, 3) == 0.0);
}

TEST_CASE("scalar lerp endpoints") {
  const double a[] = {60.0, 10.0};
  const double b[] = {10.0, 60.0};
  double out[2];
  kernels::scalar::lerp(a, b, 0.0, out, 2);
  CHECK(out[0] == 60.0);
  kernels::scalar::lerp(a, b, 0.5, out, 2);
  CHECK(out[0] == doctest::Approx(35.0));
  CHECK(out[1] == doctest::Approx(35.0));
}

TEST_CASE("avx2 variants agree with the scalar reference") {
  if (!kernels::avx2::available()) {
    MESSAGE("avx2 not available on this host; dispatch covers scalar only");
    return;
  }
  const auto& sc = kernels::scalar::table();
  const auto& vx = kernels::avx2::table();
  std::mt19937_64 rng(1234);

  for (std::size_t n : kSizes) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto a = random_vector(rng, n, -10.0, 10.0);
      const auto b = random_vector(rng, n, -10.0, 10.0);

      const double d_sc = sc.squared_l2(a.data(), b.data(), n);
      const double d_vx = vx.squared_l2(a.data(), b.data(), n);
      CHECK(d_vx == doctest::Approx(d_sc).epsilon(1e-12));

      const double s_sc = sc.sum_squares(a.data(), n);
      const double s_vx = vx.sum_squares(a.data(), n);
      CHECK(s_vx == doctest::Approx(s_sc).epsilon(1e-12));

      auto a1 = a, a2 = a;
      sc.scale(a1.data(), n, 0.37);
      vx.scale(a2.data(), n, 0.37);
      for (std::size_t i = 0; i < n; ++i) CHECK(a1[i] == a2[i]);

      std::vector<double> l1(n), l2(n);
      sc.lerp(a.data(), b.data(), 0.31, l1.data(), n);
      vx.lerp(a.data(), b.data(), 0.31, l2.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(l2[i] == doctest::Approx(l1[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("pd_torque variants agree") {
  if (!kernels::avx2::available()) return;
  const auto& sc = kernels::scalar::table();
  const auto& vx = kernels::avx2::table();
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 14;
    const auto kp = random_vector(rng, n, 10.0, 60.0);
    const auto kd = random_vector(rng, n, 0.1, 2.0);
    const auto q_ref = random_vector(rng, n);
    const auto q = random_vector(rng, n);
    const auto qd_ref = random_vector(rng, n);
    const auto qd = random_vector(rng, n);
    const auto tau_ff = random_vector(rng, n, -5.0, 5.0);
    std::vector<double> t1(n), t2(n);
    sc.pd_torque(kp.data(), kd.data(), q_ref.data(), q.data(), qd_ref.data(),
                 qd.data(), tau_ff.data(), t1.data(), n);
    vx.pd_torque(kp.data(), kd.data(), q_ref.data(), q.data(), qd_ref.data(),
                 qd.data(), tau_ff.data(), t2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(t2[i] == doctest::Approx(t1[i]).epsilon(1e-12));
  }
}

TEST_CASE("runtime backend selection") {
  const kernels::Backend before = kernels::active_backend();
  CHECK(kernels::set_backend(kernels::Backend::scalar));
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  const double a[] = {3.0, 4.0};
  CHECK(kernels::sum_squares(a, 2) == doctest::Approx(25.0));
  if (kernels::avx2::available()) {
    CHECK(kernels::set_backend(kernels::Backend::avx2));
    CHECK(kernels::active_backend() == kernels::Backend::avx2);
    CHECK(kernels::sum_squares(a, 2) == doctest::Approx(25.0));
  }
  kernels::set_backend(before);
}
