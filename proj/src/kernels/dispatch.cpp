#include <atomic>
#include <cstdlib>
#include <cstring>

#include "gainsched/kernels/kernels.hpp"

namespace gainsched::kernels {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

namespace {

Backend detect() {
  if (const char* env = std::getenv("GAINSCHED_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2::available())
      return Backend::avx2;
  }
  return avx2::available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> g_backend{detect()};

}  // namespace

const KernelTable& active() {
  return g_backend.load(std::memory_order_relaxed) == Backend::avx2
             ? avx2::table()
             : scalar::table();
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2::available()) return false;
  g_backend.store(b, std::memory_order_relaxed);
  return true;
}

}  // namespace gainsched::kernels
