#include <atomic>

#include "nhnc/errors.hpp"
#include "nhnc/kernels.hpp"

namespace nhnc::kernels {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_avx2() ? Backend::avx2 : Backend::scalar};
  return slot;
}

}  // namespace

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw InvalidParameter("AVX2/FMA kernels requested on a CPU without AVX2/FMA");
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

double dot(const double* a, const double* b, std::size_t n) {
  return active_backend() == Backend::avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

double dot2(const double* a, const double* b, const double* c, const double* d, std::size_t n) {
  return active_backend() == Backend::avx2 ? avx2::dot2(a, b, c, d, n)
                                           : scalar::dot2(a, b, c, d, n);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return active_backend() == Backend::avx2 ? avx2::dot3(a, b, c, n) : scalar::dot3(a, b, c, n);
}

}  // namespace nhnc::kernels
