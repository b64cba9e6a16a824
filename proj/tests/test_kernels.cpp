#include <doctest.h>

#include <random>
#include <vector>

#include "nhnc/errors.hpp"
#include "nhnc/kernels.hpp"
#include "nhnc/wigner.hpp"

using namespace nhnc;
namespace k = nhnc::kernels;

namespace {

std::vector<double> filled(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return v;
}

// restores the startup backend on scope exit
struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar reference on small inputs") {
  const double a[] = {1, 2, 3}, b[] = {4, 5, 6}, c[] = {1, 0, -1}, d[] = {2, 2, 2};
  CHECK(k::scalar::dot(a, b, 3) == 32.0);
  CHECK(k::scalar::dot2(a, b, c, d, 3) == 32.0);
  CHECK(k::scalar::dot3(a, b, c, 3) == 4.0 - 18.0);
  CHECK(k::scalar::dot(a, b, 0) == 0.0);
}

TEST_CASE("avx2 matches scalar on every tail length") {
  if (!k::avx2_available()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(2024);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 31u, 64u, 129u, 1000u, 4097u}) {
    const auto a = filled(rng, n), b = filled(rng, n), c = filled(rng, n), d = filled(rng, n);
    const double tol = 1e-14 * std::max<std::size_t>(n, 1);
    CHECK(std::abs(k::avx2::dot(a.data(), b.data(), n) - k::scalar::dot(a.data(), b.data(), n)) <= tol);
    CHECK(std::abs(k::avx2::dot2(a.data(), b.data(), c.data(), d.data(), n) -
                   k::scalar::dot2(a.data(), b.data(), c.data(), d.data(), n)) <= tol);
    CHECK(std::abs(k::avx2::dot3(a.data(), b.data(), c.data(), n) - k::scalar::dot3(a.data(), b.data(), c.data(), n)) <=
          tol);
  }
}

TEST_CASE("backend selection") {
  BackendGuard guard;
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  CHECK(std::string(k::backend_name(k::Backend::scalar)) == "scalar");
  CHECK(std::string(k::backend_name(k::Backend::avx2)) == "avx2");
  if (k::avx2_available()) {
    k::set_backend(k::Backend::avx2);
    CHECK(k::active_backend() == k::Backend::avx2);
  } else {
    CHECK_THROWS_AS(k::set_backend(k::Backend::avx2), InvalidParameter);
  }
}

TEST_CASE("Wigner grids agree across backends") {
  if (!k::avx2_available()) return;
  BackendGuard guard;
  const auto state = FockStateVector::normalized({0.6, Complex{0.0, 0.5}, 0.3});
  k::set_backend(k::Backend::scalar);
  const auto ws = wigner_of_state(state, 1.0, 1.2, 1.0);
  k::set_backend(k::Backend::avx2);
  const auto wv = wigner_of_state(state, 1.0, 1.2, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < ws.values.size(); ++i) worst = std::max(worst, std::abs(ws.values[i] - wv.values[i]));
  CHECK(worst < 1e-13);
  CHECK(std::abs(grid_mass(ws) - grid_mass(wv)) < 1e-13);
}
