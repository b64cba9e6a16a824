#include "nhnc/star.hpp"

#include <cmath>
#include <map>

#include "nhnc/errors.hpp"

namespace nhnc {

AlgebraParams::AlgebraParams(double hbar, double theta, double zeta)
    : hbar_(hbar), theta_(theta), zeta_(zeta) {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw InvalidAlgebra("hbar must be positive and finite");
  if (!std::isfinite(theta) || !std::isfinite(zeta))
    throw InvalidAlgebra("theta and zeta must be finite");
  if (!(deformation_ratio() < 1.0))
    throw InvalidAlgebra("theta*zeta/hbar^2 = " + format_double(deformation_ratio()) +
                         " must be < 1 for an invertible Seiberg-Witten map");
}

namespace {

double levi_civita(int k, int l) {
  if (k == l) return 0.0;
  return k < l ? 1.0 : -1.0;
}

}  // namespace

double AlgebraParams::theta_kl(int k, int l) const { return theta_ * levi_civita(k, l); }
double AlgebraParams::zeta_kl(int k, int l) const { return zeta_ * levi_civita(k, l); }

std::vector<Complex> DeformationMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != 4) throw DimensionMismatch("DeformationMatrix::apply expects 4 components");
  std::vector<Complex> out(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out[a] += omega[a][b] * v[b];
  }
  return out;
}

DeformationMatrix deformation_matrix(const AlgebraParams& alg) {
  DeformationMatrix m;
  constexpr int q1 = 0, q2 = 1, p1 = 2, p2 = 3;
  auto set = [&](int a, int b, double v) {
    m.omega[a][b] = v;
    m.omega[b][a] = -v;
  };
  set(q1, q2, alg.theta());
  set(p1, p2, alg.zeta());
  set(q1, p1, alg.hbar());
  set(q2, p2, alg.hbar());
  return m;
}

ExpLinear ExpLinear::identity(int dimension) {
  return ExpLinear{std::vector<Complex>(dimension), 1.0};
}

Complex ExpLinear::eval(std::span<const Complex> z) const {
  if (z.size() != coeffs.size()) throw DimensionMismatch("ExpLinear::eval dimension mismatch");
  Complex s{};
  for (std::size_t a = 0; a < z.size(); ++a) s += coeffs[a] * z[a];
  return prefactor * std::exp(s);
}

Complex ExpPoly::eval(std::span<const Complex> z) const {
  return exponential.eval(z) * nhnc::eval(poly, z);
}

namespace {

using TensorTerms = std::map<Exponents, Complex>;

void require_algebra_order(const PhaseSymbol& f) {
  if (f.order().dimension() != AlgebraParams::dimension)
    throw DimensionMismatch("star products are defined on the two-mode phase space");
}

}  // namespace

PhaseSymbol star_product(const PhaseSymbol& f, const PhaseSymbol& g, const AlgebraParams& alg) {
  require_algebra_order(f);
  require_algebra_order(g);
  const auto omega = deformation_matrix(alg);
  constexpr int n = AlgebraParams::dimension;

  // f(z) g(w) as one polynomial in (z, w); D = sum Omega_ab d/dz_a d/dw_b is
  // applied repeatedly and the result restricted to w = z.
  TensorTerms h;
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      Exponents e(ef);
      e.insert(e.end(), eg.begin(), eg.end());
      h[std::move(e)] += cf * cg;
    }
  }

  PhaseSymbol::TermMap result;
  auto accumulate = [&](const TensorTerms& t) {
    Exponents e(n);
    for (const auto& [ezw, c] : t) {
      for (int a = 0; a < n; ++a) e[a] = static_cast<std::uint16_t>(ezw[a] + ezw[n + a]);
      result[e] += c;
    }
  };
  accumulate(h);

  const Complex half_i{0.0, 0.5};
  for (int order = 1; !h.empty(); ++order) {
    TensorTerms next;
    const Complex factor = half_i / static_cast<double>(order);
    for (const auto& [e, c] : h) {
      for (int a = 0; a < n; ++a) {
        if (e[a] == 0) continue;
        for (int b = 0; b < n; ++b) {
          const double w = omega(a, b);
          if (w == 0.0 || e[n + b] == 0) continue;
          Exponents d(e);
          --d[a];
          --d[n + b];
          next[std::move(d)] += factor * c * w * static_cast<double>(e[a]) *
                                static_cast<double>(e[n + b]);
        }
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == Complex{}; });
    h = std::move(next);
    accumulate(h);
  }
  return PhaseSymbol(f.order(), std::move(result));
}

PhaseSymbol star_commutator(const PhaseSymbol& f, const PhaseSymbol& g, const AlgebraParams& alg) {
  return subtract(star_product(f, g, alg), star_product(g, f, alg));
}

ExpLinear exp_star_exp(const ExpLinear& a, const ExpLinear& b, const AlgebraParams& alg) {
  if (a.coeffs.size() != 4 || b.coeffs.size() != 4)
    throw DimensionMismatch("exp_star_exp expects 4-component linear forms");
  const auto omega = deformation_matrix(alg);
  Complex bilinear{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) bilinear += a.coeffs[i] * omega(i, j) * b.coeffs[j];
  }
  ExpLinear out;
  out.coeffs.resize(4);
  for (int i = 0; i < 4; ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  out.prefactor = a.prefactor * b.prefactor * std::exp(Complex{0.0, 0.5} * bilinear);
  return out;
}

namespace {

std::vector<Complex> omega_times(const AlgebraParams& alg, std::span<const Complex> a,
                                 Complex factor) {
  auto v = deformation_matrix(alg).apply(a);
  for (auto& x : v) x *= factor;
  return v;
}

}  // namespace

PhaseSymbol star_conjugate(const ExpLinear& a, const PhaseSymbol& f, const AlgebraParams& alg) {
  require_algebra_order(f);
  return shift(f, omega_times(alg, a.coeffs, Complex{0.0, -1.0}));
}

PhaseSymbol star_conjugate(std::span<const ExpLinear> factors, const PhaseSymbol& f,
                           const AlgebraParams& alg) {
  std::vector<Complex> total(4);
  for (const auto& e : factors) {
    if (e.coeffs.size() != 4) throw DimensionMismatch("star_conjugate expects 4-component forms");
    for (int i = 0; i < 4; ++i) total[i] += e.coeffs[i];
  }
  return star_conjugate(ExpLinear{total, 1.0}, f, alg);
}

ExpPoly exp_star_poly(const ExpLinear& e, const PhaseSymbol& f, const AlgebraParams& alg) {
  require_algebra_order(f);
  return ExpPoly{e, shift(f, omega_times(alg, e.coeffs, Complex{0.0, -0.5}))};
}

ExpPoly poly_star_exp(const PhaseSymbol& f, const ExpLinear& e, const AlgebraParams& alg) {
  require_algebra_order(f);
  return ExpPoly{e, shift(f, omega_times(alg, e.coeffs, Complex{0.0, 0.5}))};
}

Complex star_product_at(const PhaseSymbol& f, const DerivativeJet& g_derivatives,
                        std::span<const Complex> z, const AlgebraParams& alg) {
  require_algebra_order(f);
  const auto omega = deformation_matrix(alg);
  constexpr int n = AlgebraParams::dimension;
  const int max_order = std::max(f.degree(), 0);

  // Expand exp[(i/2) u^T Omega w] up to order deg f; a monomial u^alpha w^beta
  // stands for (d^alpha f)(d^beta g).
  TensorTerms ops;
  ops[Exponents(2 * n, 0)] = 1.0;
  TensorTerms layer = ops;
  for (int order = 1; order <= max_order; ++order) {
    TensorTerms next;
    const Complex factor = Complex{0.0, 0.5} / static_cast<double>(order);
    for (const auto& [e, c] : layer) {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (omega(a, b) == 0.0) continue;
          Exponents d(e);
          ++d[a];
          ++d[n + b];
          next[std::move(d)] += factor * c * omega(a, b);
        }
      }
    }
    layer = std::move(next);
    for (const auto& [e, c] : layer) ops[e] += c;
  }

  Complex value{};
  for (const auto& [e, c] : ops) {
    if (c == Complex{}) continue;
    PhaseSymbol df = f;
    for (int a = 0; a < n && !df.is_zero(); ++a) {
      for (int k = 0; k < e[a]; ++k) df = partial(df, a);
    }
    if (df.is_zero()) continue;
    Exponents beta(e.begin() + n, e.end());
    value += c * eval(df, z) * g_derivatives(beta);
  }
  return value;
}

}  // namespace nhnc
