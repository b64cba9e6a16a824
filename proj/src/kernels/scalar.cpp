#include "nhnc/kernels.hpp"

namespace nhnc::kernels::scalar {

// Four independent accumulators, combined pairwise, so the summation order
// matches the AVX2 lanes closely.
double dot(const double* a, const double* b, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l];
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return (s[0] + s[2]) + (s[1] + s[3]) + tail;
}

double dot2(const double* a, const double* b, const double* c, const double* d, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l] + c[i + l] * d[i + l];
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i] + c[i] * d[i];
  return (s[0] + s[2]) + (s[1] + s[3]) + tail;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l] * c[i + l];
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i] * c[i];
  return (s[0] + s[2]) + (s[1] + s[3]) + tail;
}

}  // namespace nhnc::kernels::scalar
