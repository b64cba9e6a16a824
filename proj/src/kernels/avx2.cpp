#include "nhnc/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define NHNC_X86 1
#endif

namespace nhnc::kernels::avx2 {

#ifdef NHNC_X86

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  // (l0 + l2) + (l1 + l3), same pairing as the scalar reference
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

}  // namespace

__attribute__((target("avx2,fma"))) double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return hsum(acc) + tail;
}

__attribute__((target("avx2,fma"))) double dot2(const double* a, const double* b, const double* c,
                                                const double* d, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i] + c[i] * d[i];
  return hsum(acc) + tail;
}

__attribute__((target("avx2,fma"))) double dot3(const double* a, const double* b, const double* c,
                                                std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i] * c[i];
  return hsum(acc) + tail;
}

#else

double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
double dot2(const double* a, const double* b, const double* c, const double* d, std::size_t n) {
  return scalar::dot2(a, b, c, d, n);
}
double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return scalar::dot3(a, b, c, n);
}

#endif

}  // namespace nhnc::kernels::avx2
