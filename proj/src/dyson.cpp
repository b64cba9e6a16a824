#include "nhnc/dyson.hpp"

#include <cmath>
#include <numbers>

#include "nhnc/errors.hpp"

namespace nhnc {

void OscillatorParams::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!(m > 0.0) || !finite(m)) throw InvalidParameter("mass m must be positive");
  if (!(hbar > 0.0) || !finite(hbar)) throw InvalidParameter("hbar must be positive");
  for (int i = 0; i < 2; ++i) {
    if (!(omega[i] > 0.0) || !finite(omega[i]))
      throw InvalidParameter("frequencies w1, w2 must be positive");
    if (!finite(gamma[i]) || !finite(delta[i].real()) || !finite(delta[i].imag()))
      throw InvalidParameter("gamma and delta must be finite");
  }
}

DysonParams DysonParams::from_complex(Complex A1, Complex A2, Complex B1, Complex B2) {
  DysonParams d;
  const std::array<Complex, 2> A{A1, A2}, B{B1, B2};
  for (int i = 0; i < 2; ++i) {
    d.magnitude_A[i] = std::abs(A[i]);
    d.phase_A[i] = std::arg(A[i]);
    d.magnitude_B[i] = std::abs(B[i]);
    d.phase_B[i] = std::arg(B[i]);
  }
  return d;
}

std::vector<Complex> DysonParams::linear_form() const { return {A(0), A(1), B(0), B(1)}; }

namespace {

// Polar pair with Re = real_part and arg = phase (mod pi).
void polar_from_real_part(double real_part, double phase, double& magnitude, double& out_phase) {
  const double c = std::cos(phase);
  if (std::abs(c) < 1e-12) {
    if (real_part != 0.0)
      throw DegenerateAlgebra("Dyson phase at +-pi/2 cannot carry a nonzero real part");
    magnitude = 0.0;
    out_phase = phase;
    return;
  }
  const double r = real_part / c;
  magnitude = std::abs(r);
  out_phase = r < 0.0 ? phase + std::numbers::pi : phase;
}

double checked_denominator(double value) {
  if (std::abs(value) < 1e-300) throw DegenerateAlgebra("vanishing Dyson constraint denominator");
  return value;
}

}  // namespace

DysonParams hermiticity_constraints(const std::array<double, 2>& alpha,
                                    const std::array<double, 2>& beta,
                                    const std::array<Complex, 2>& delta, const AlgebraParams& alg,
                                    const DysonPhases& phases) {
  (void)alpha;  // the p_i reality condition does not involve alpha
  const double hbar = alg.hbar();
  DysonParams d;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double dj = 2.0 * delta[j].real();
    const double di = 2.0 * delta[i].real();
    const double den_a = checked_denominator(alg.zeta_kl(j, i) * alg.theta_kl(i, j) + hbar * hbar);
    const double den_b = checked_denominator(alg.theta_kl(j, i) * alg.zeta_kl(i, j) + hbar * hbar);
    const double re_a = -dj * alg.zeta_kl(j, i) / (2.0 * 2.0 * beta[j] * den_a);
    const double re_b = di * hbar / (2.0 * 2.0 * beta[i] * den_b);
    polar_from_real_part(re_a, phases.A[i], d.magnitude_A[i], d.phase_A[i]);
    polar_from_real_part(re_b, phases.B[i], d.magnitude_B[i], d.phase_B[i]);
  }
  return d;
}

DysonParams hermiticity_constraints(const OscillatorParams& osc, const AlgebraParams& alg,
                                    const DysonPhases& phases) {
  osc.validate();
  return hermiticity_constraints({osc.alpha(0), osc.alpha(1)}, {osc.beta(0), osc.beta(1)},
                                 osc.delta, alg, phases);
}

ExpLinear dyson_weyl(const DysonParams& d) { return ExpLinear{d.linear_form(), 1.0}; }

ExpLinear inverse_dyson_weyl(const DysonParams& d) {
  auto a = d.linear_form();
  for (auto& x : a) x = -x;
  return ExpLinear{a, 1.0};
}

ExpLinear metric_weyl(const DysonParams& d, const AlgebraParams& alg) {
  const auto eta = dyson_weyl(d);
  ExpLinear eta_dagger = eta;
  for (auto& x : eta_dagger.coeffs) x = std::conj(x);
  return exp_star_exp(eta_dagger, eta, alg);
}

PhaseSymbol conjugate_hamiltonian(const PhaseSymbol& h_nh, const DysonParams& d,
                                  const AlgebraParams& alg) {
  return star_conjugate(dyson_weyl(d), h_nh, alg);
}

HermitianNCCoeffs hermitian_nc_coeffs(const OscillatorParams& osc, const AlgebraParams& alg,
                                      const DysonPhases& phases) {
  osc.validate();
  const double hbar = alg.hbar();
  const double m = osc.m;
  HermitianNCCoeffs c;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double tan_ai = std::tan(phases.A[i]), tan_aj = std::tan(phases.A[j]);
    const double tan_bi = std::tan(phases.B[i]), tan_bj = std::tan(phases.B[j]);
    const Complex di = osc.delta[i], dj = osc.delta[j];
    const double wj2 = osc.omega[j] * osc.omega[j];
    const double wi2 = osc.omega[i] * osc.omega[i];
    const double den_v = checked_denominator(alg.zeta_kl(j, i) * alg.theta_kl(i, j) + hbar * hbar);
    const double den_t = checked_denominator(alg.theta_kl(j, i) * alg.zeta_kl(i, j) + hbar * hbar);

    const Complex v = -alg.zeta_kl(j, i) * hbar * (dj + std::conj(dj)) * (tan_bj - tan_ai) /
                          (2.0 * m * m * wj2 * den_v) +
                      osc.gamma[i];
    const Complex t =
        Complex{0.0, 1.0} * (di - std::conj(di)) / 2.0 +
        (di + std::conj(di)) * (tan_aj * alg.theta_kl(j, i) * alg.zeta_kl(i, j) + tan_bi * hbar * hbar) /
            (2.0 * den_t);
    const Complex constant =
        (m * m * wi2 * (v * v - osc.gamma[i] * osc.gamma[i]) + (di * di + t * t)) / (2.0 * m * wi2);
    c.V[i] = v.real();
    c.T[i] = t.real();
    c.constant[i] = constant.real();
  }
  return c;
}

namespace {

PhaseSymbol quadratic_plus_linear(const std::array<double, 2>& p2, const std::array<double, 2>& q2,
                                  const std::array<Complex, 2>& p1, const std::array<Complex, 2>& q1,
                                  const std::array<Complex, 2>& constant) {
  const VariableOrder order(2);
  PhaseSymbol h(order);
  for (int i = 0; i < 2; ++i) {
    const auto q = PhaseSymbol::variable(order, order.position(i));
    const auto p = PhaseSymbol::variable(order, order.momentum(i));
    h = h + p2[i] * (p * p) + q2[i] * (q * q) + p1[i] * p + q1[i] * q + constant[i];
  }
  return h;
}

}  // namespace

PhaseSymbol build_hhnc_hand(const OscillatorParams& osc, const AlgebraParams& alg,
                             const DysonParams& d) {
  const auto c = hermitian_nc_coeffs(osc, alg, d.phases());
  return quadratic_plus_linear({osc.alpha(0), osc.alpha(1)}, {osc.beta(0), osc.beta(1)},
                               {c.V[0], c.V[1]}, {c.T[0], c.T[1]},
                               {c.constant[0], c.constant[1]});
}

PhaseSymbol build_hhnc_appendix(const std::array<double, 2>& alpha,
                                const std::array<double, 2>& beta,
                                const std::array<double, 2>& gamma,
                                const std::array<Complex, 2>& delta, const AlgebraParams& alg,
                                const DysonParams& d) {
  const double hbar = alg.hbar();
  const Complex I{0.0, 1.0};
  std::array<Complex, 2> p_coeff{}, q_coeff{}, constant{};
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double tan_ai = std::tan(d.phase_A[i]), tan_aj = std::tan(d.phase_A[j]);
    const double tan_bi = std::tan(d.phase_B[i]), tan_bj = std::tan(d.phase_B[j]);
    const double den_a = checked_denominator(alg.zeta_kl(j, i) * alg.theta_kl(i, j) + hbar * hbar);
    const double den_b = checked_denominator(alg.theta_kl(j, i) * alg.zeta_kl(i, j) + hbar * hbar);
    const double tan_mix = tan_aj * alg.theta_kl(j, i) * alg.zeta_kl(i, j) + tan_bi * hbar * hbar;
    const Complex di = delta[i], dj = delta[j];

    p_coeff[i] = -alpha[i] * alg.zeta_kl(j, i) * hbar * dj * (tan_bj - tan_ai) / (beta[j] * den_a) +
                 gamma[i];
    q_coeff[i] = di * tan_mix / den_b;

    const Complex u = I * dj * (tan_bj - tan_ai) * alg.zeta_kl(j, i) * hbar / (2.0 * beta[j] * den_a);
    const Complex s = -1.0 - I * tan_mix / den_b;
    constant[i] = -alpha[i] * u * u - di * di / (4.0 * beta[i]) * s * s -
                  gamma[i] * dj * ((tan_bj - tan_ai) * alg.zeta_kl(j, i) * hbar / (2.0 * beta[j] * den_a)) +
                  di * di / (2.0 * beta[i]) * (1.0 + I * tan_mix / den_b);
  }
  return quadratic_plus_linear(alpha, beta, p_coeff, q_coeff, constant);
}

}  // namespace nhnc
