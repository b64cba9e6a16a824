#pragma once

#include <cstddef>

// Reduction kernels behind the Wigner transform and grid quadrature.
// A scalar reference and an AVX2/FMA variant; the variant is chosen once at
// startup from CPUID and can be pinned for equivalence testing.
namespace nhnc::kernels {

enum class Backend { scalar, avx2 };

bool avx2_available();
Backend active_backend();
// Throws InvalidParameter when asking for avx2 on a CPU without it.
void set_backend(Backend b);
const char* backend_name(Backend b);

// sum a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
// sum a[i] * b[i] + c[i] * d[i]
double dot2(const double* a, const double* b, const double* c, const double* d, std::size_t n);
// sum a[i] * b[i] * c[i]
double dot3(const double* a, const double* b, const double* c, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double dot2(const double* a, const double* b, const double* c, const double* d, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double dot2(const double* a, const double* b, const double* c, const double* d, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
}  // namespace avx2

}  // namespace nhnc::kernels
