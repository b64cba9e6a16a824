#include "nhnc/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nhnc/errors.hpp"

namespace nhnc {

namespace {

const VariableOrder kOrder(2);

PhaseSymbol var(int index) { return PhaseSymbol::variable(kOrder, index); }

// atan(num/den) with the 0/0 limit (commutative point) taken as 0.
double ratio_atan(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::copysign(std::numbers::pi / 2.0, num);
  return std::atan(num / den);
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw BranchFailure(std::string("non-finite ") + what);
}

}  // namespace

PhaseSymbol build_h_nhnc_general(const std::array<double, 2>& alpha,
                                 const std::array<double, 2>& beta,
                                 const std::array<double, 2>& gamma,
                                 const std::array<Complex, 2>& delta) {
  PhaseSymbol h(kOrder);
  for (int i = 0; i < 2; ++i) {
    const auto q = var(kOrder.position(i));
    const auto p = var(kOrder.momentum(i));
    h = h + alpha[i] * (p * p) + beta[i] * (q * q) + gamma[i] * p +
        (Complex{0.0, 1.0} * delta[i]) * q;
  }
  return h;
}

PhaseSymbol build_h_nhnc(const OscillatorParams& osc) {
  osc.validate();
  return build_h_nhnc_general({osc.alpha(0), osc.alpha(1)}, {osc.beta(0), osc.beta(1)}, osc.gamma,
                              osc.delta);
}

PhaseSymbol HHQPCoeffs::symbol() const {
  PhaseSymbol h(kOrder);
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const auto Q = var(kOrder.position(i));
    const auto P = var(kOrder.momentum(i));
    const auto Qj = var(kOrder.position(j));
    h = h + p2[i] * (P * P) + q2[i] * (Q * Q) + (2.0 * cross[i]) * (P * Qj) + xi[i] * P +
        lambda[i] * Q + Complex{omega[i], 0.0};
  }
  return h;
}

HHQPCoeffs hhqp_coeffs(const OscillatorParams& osc, const AlgebraParams& alg, const SWParams& sw,
                       const HermitianNCCoeffs& hnc) {
  const double m = osc.m, hbar = alg.hbar(), mu = sw.mu(), nu = sw.nu();
  HHQPCoeffs c;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double th_ji = alg.theta_kl(j, i), z_ji = alg.zeta_kl(j, i), z_ij = alg.zeta_kl(i, j);
    const double wi2 = osc.omega[i] * osc.omega[i], wj2 = osc.omega[j] * osc.omega[j];
    c.p2[i] = mu * mu / (2.0 * m) + m * wj2 * th_ji * th_ji / (8.0 * nu * nu * hbar * hbar);
    c.q2[i] = 0.5 * m * wi2 * nu * nu + z_ji * z_ji / (8.0 * m * mu * mu * hbar * hbar);
    c.cross[i] = (z_ij - m * m * wj2 * th_ji) / (4.0 * m * hbar);
    c.xi[i] = mu * hnc.V[i] - th_ji * hnc.T[j] / (2.0 * nu * hbar);
    c.lambda[i] = z_ji * hnc.V[j] / (2.0 * mu * hbar) + nu * hnc.T[i];
    c.omega[i] = hnc.constant[i];
  }
  return c;
}

PhaseSymbol build_h_hc(const OscillatorParams& osc, const AlgebraParams& alg, const SWParams& sw,
                       const DysonParams& d) {
  const auto h_hnc = conjugate_hamiltonian(build_h_nhnc(osc), d, alg);
  return substitute(h_hnc, forward_map(sw));
}

PhaseSymbol build_h_hc_hand(const OscillatorParams& osc, const AlgebraParams& alg,
                             const SWParams& sw, const DysonParams& d) {
  return hhqp_coeffs(osc, alg, sw, hermitian_nc_coeffs(osc, alg, d.phases())).symbol();
}

PhaseSymbol AppendixHCCoeffs::symbol() const {
  PhaseSymbol h(kOrder);
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const auto Q = var(kOrder.position(i));
    const auto P = var(kOrder.momentum(i));
    const auto Qj = var(kOrder.position(j));
    h = h + F[i] * (P * P) + G[i] * (Q * Q) + (2.0 * H[i]) * (P * Qj) + I[i] * P + K[i] * Q + L[i];
  }
  return h;
}

AppendixHCCoeffs hhc_appendix_coeffs(const std::array<double, 2>& alpha,
                                     const std::array<double, 2>& beta,
                                     const std::array<double, 2>& gamma,
                                     const std::array<double, 2>& delta, const AlgebraParams& alg,
                                     const SWParams& sw, const DysonParams& d) {
  const double hbar = alg.hbar(), mu = sw.mu(), nu = sw.nu();
  const Complex I{0.0, 1.0};
  AppendixHCCoeffs c;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double th_ji = alg.theta_kl(j, i), th_ij = alg.theta_kl(i, j);
    const double z_ji = alg.zeta_kl(j, i), z_ij = alg.zeta_kl(i, j);
    const double tai = std::tan(d.phase_A[i]), taj = std::tan(d.phase_A[j]);
    const double tbi = std::tan(d.phase_B[i]), tbj = std::tan(d.phase_B[j]);
    const double den_i = z_ji * th_ij + hbar * hbar;
    const double den_j = th_ji * z_ij + hbar * hbar;
    if (den_i == 0.0 || den_j == 0.0) throw DegenerateAlgebra("vanishing Dyson constraint denominator");
    const double mix_i = taj * th_ji * z_ij + tbi * hbar * hbar;

    c.F[i] = alpha[i] * mu * mu + beta[j] * th_ji * th_ji / (4.0 * nu * nu * hbar * hbar);
    c.G[i] = beta[i] * nu * nu + alpha[j] * z_ji * z_ji / (4.0 * mu * mu * hbar * hbar);
    c.H[i] = alpha[i] * z_ij / (2.0 * hbar) - beta[j] * th_ji / (2.0 * hbar);
    c.I[i] = gamma[i] - mu * delta[j] / den_i *
                            (alpha[i] * z_ji * hbar / beta[j] * (tbj - tai) +
                             th_ji / (2.0 * nu * hbar) * (tai * z_ji * th_ij + tbj * hbar * hbar));
    c.K[i] = z_ji / (2.0 * mu * hbar) * gamma[j] +
             delta[i] / den_j *
                 (-alpha[j] * z_ji * z_ij * hbar * (tbi - taj) / (2.0 * mu * hbar * beta[i]) +
                  nu * mix_i);
    const Complex u = I * delta[j] * (tbj - tai) * z_ji * hbar / (2.0 * beta[j] * den_i);
    const Complex s = -delta[i] / (2.0 * beta[i]) - I * mix_i * delta[i] / (2.0 * beta[i] * den_j);
    c.L[i] = -alpha[i] * u * u - beta[i] * s * s + I * gamma[i] * u +
             delta[i] * (delta[i] / (2.0 * beta[i]) + I * delta[i] * mix_i / (2.0 * beta[i] * den_j));
  }
  return c;
}

std::string SpectrumReading::describe() const {
  std::ostringstream os;
  os << "l=" << (gamma_l == GammaL::plus ? "l+" : "l-")
     << " squeeze_den=" << (squeeze_denominator == SqueezeDenominator::printed ? "hbar" : "l+hbar")
     << " Dbar="
     << (d_bar == DBar::printed ? "printed"
                                : (d_bar == DBar::cosh_on_g_plus ? "cosh_on_G+" : "index_swap"))
     << " chi2=" << (chi2_factor == Chi2Factor::printed ? "sqrt(m w)hbar" : "sqrt(m w hbar)")
     << " k=" << k_parity << " phi=(" << phi[0] << "," << phi[1] << ")";
  return os.str();
}

int SpectrumReading::branch() const { return (k_parity & 1) | ((phi[0] & 1) << 1) | ((phi[1] & 1) << 2); }

void SpectrumReading::set_branch(int b) {
  k_parity = b & 1;
  phi[0] = (b >> 1) & 1;
  phi[1] = (b >> 2) & 1;
}

std::vector<SpectrumReading> SpectrumReading::all() {
  std::vector<SpectrumReading> out;
  for (auto gl : {GammaL::plus, GammaL::minus})
    for (auto sd : {SqueezeDenominator::printed, SqueezeDenominator::with_l_plus})
      for (auto db : {DBar::printed, DBar::cosh_on_g_plus, DBar::index_swap})
        for (auto cf : {Chi2Factor::printed, Chi2Factor::sqrt_m_omega_hbar})
          for (int b = 0; b < kBranches; ++b) {
            SpectrumReading r;
            r.gamma_l = gl;
            r.squeeze_denominator = sd;
            r.d_bar = db;
            r.chi2_factor = cf;
            r.set_branch(b);
            out.push_back(r);
          }
  return out;
}

namespace {

SpectrumParams spectrum_params_regular(const OscillatorParams& osc, const AlgebraParams& alg,
                                       const SWParams& sw, const DysonParams& d,
                                       const SpectrumReading& reading) {
  const double m = osc.m, hbar = alg.hbar(), mu = sw.mu(), nu = sw.nu();
  const auto& w = osc.omega;
  SpectrumParams sp;
  sp.hhqp = hhqp_coeffs(osc, alg, sw, hermitian_nc_coeffs(osc, alg, d.phases()));

  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double th_ji = alg.theta_kl(j, i), z_ji = alg.zeta_kl(j, i);
    const double kin = mu * mu / m + m * w[j] * w[j] * th_ji * th_ji / (4.0 * nu * nu * hbar * hbar);
    const double pot = m * w[i] * w[i] * nu * nu + z_ji * z_ji / (4.0 * m * mu * mu * hbar * hbar);
    sp.f[i] = -m * hbar * w[i] / 4.0 * kin + hbar / (4.0 * m * w[i]) * pot;
    sp.g[i] = m * hbar * w[i] / 2.0 * kin + hbar / (2.0 * m * w[i]) * pot;
  }
  const double th12 = alg.theta_kl(0, 1), z12 = alg.zeta_kl(0, 1);
  const double a = std::sqrt(w[0] / w[1]) * (z12 / (2.0 * m) + 0.5 * m * w[1] * w[1] * th12);
  const double b = std::sqrt(w[1] / w[0]) * (z12 / (2.0 * m) + 0.5 * m * w[0] * w[0] * th12);
  sp.l_plus = (a + b) / (2.0 * hbar);
  sp.l_minus = (a - b) / (2.0 * hbar);
  const double lp = sp.l_plus, lm = sp.l_minus;

  const double Fm = sp.f[0] - sp.f[1], Fp = sp.f[0] + sp.f[1];
  const double Gm = sp.g[0] - sp.g[1], Gp = sp.g[0] + sp.g[1];

  sp.upsilon = ratio_atan(2.0 * hbar * (2.0 * Fm * lm + Gp * lp),
                          4.0 * (sp.f[0] * sp.f[0] - sp.f[1] * sp.f[1]) -
                              (sp.g[0] * sp.g[0] - sp.g[1] * sp.g[1]));
  const double l_gamma = reading.gamma_l == SpectrumReading::GammaL::plus ? lp : lm;
  const double tu = std::tan(sp.upsilon);
  sp.gamma_angle = ratio_atan(Gm * tu + 2.0 * l_gamma * hbar, 2.0 * Fm * std::sqrt(1.0 + tu * tu));
  require_finite(sp.upsilon, "Upsilon");
  require_finite(sp.gamma_angle, "Gamma");

  const double su = std::sin(sp.upsilon), cu = std::cos(sp.upsilon);
  const double sg = std::sinh(sp.gamma_angle), cg = std::cosh(sp.gamma_angle);
  const double sign = reading.k_parity % 2 == 0 ? -1.0 : 1.0;  // (-1)^(k+1)
  const double hb_den =
      reading.squeeze_denominator == SpectrumReading::SqueezeDenominator::printed ? hbar : lp * hbar;

  // Denominators of the squeeze and displacement formulas.
  const double den1_squeeze = -2.0 * su * (sg * Fp + hb_den) + cg * Gp + cu * (Gm + 2.0 * lm * hbar * sg);
  const double den2_squeeze =
      2.0 * sg * (lm * hbar * cu - Fp * su) + cg * (-Gm * cu + 2.0 * hb_den * su) + Gp;
  const double den1_chi = -2.0 * su * (sg * Fp + lp * hbar) + cg * Gp + cu * (Gm + 2.0 * lm * hbar * sg);
  const double den2_chi = 2.0 * sg * (lm * hbar * cu - Fp * su) + cg * (2.0 * lp * hbar * su - Gm * cu) + Gp;

  const double num1 = sign * (2.0 * cg * Fm + 2.0 * cu * (Fp - lp * hbar * sg) + su * (2.0 * lm * hbar - sg * Gm));
  const double num2 = -sign * (2.0 * cg * Fm - 2.0 * cu * (Fp + lp * hbar * sg) - su * (sg * Gm + 2.0 * lm * hbar));
  sp.tanh_2r[0] = num1 == 0.0 ? 0.0 : num1 / den1_squeeze;
  sp.tanh_2r[1] = num2 == 0.0 ? 0.0 : num2 / den2_squeeze;
  for (int i = 0; i < 2; ++i) {
    const double t = sp.tanh_2r[i];
    if (!std::isfinite(t) || std::abs(t) >= 1.0) {
      std::ostringstream os;
      os << "squeeze argument tanh(2 r_" << (i + 1) << ") = " << format_double(t)
         << " outside (-1, 1); Upsilon=" << format_double(sp.upsilon)
         << " Gamma=" << format_double(sp.gamma_angle) << " F-=" << format_double(Fm)
         << " F+=" << format_double(Fp) << " G-=" << format_double(Gm) << " G+=" << format_double(Gp)
         << " l+=" << format_double(lp) << " l-=" << format_double(lm);
      throw BranchFailure(os.str());
    }
    sp.r[i] = 0.5 * std::atanh(t);
  }

  const double su2 = std::sin(sp.upsilon / 2.0), cu2 = std::cos(sp.upsilon / 2.0);
  const double sg2 = std::sinh(sp.gamma_angle / 2.0), cg2 = std::cosh(sp.gamma_angle / 2.0);
  // lambda_{i,+-}, kappa_{i,+-}; mode 1 by the 1<->2 index swap of the mode-2 forms.
  auto lambda = [&](int i, double s) {
    const Complex e = std::polar(1.0, reading.phi[i] * std::numbers::pi);
    return (std::cosh(sp.r[i]) + s * e * std::sinh(sp.r[i])) * (su2 * cg2 + s * cu2 * sg2);
  };
  auto kappa = [&](int i, double s) {
    const Complex e = std::polar(1.0, reading.phi[i] * std::numbers::pi);
    return (std::cosh(sp.r[i]) - s * e * std::sinh(sp.r[i])) * (cu2 * cg2 + s * su2 * sg2);
  };
  const Complex I{0.0, 1.0};
  const auto& h = sp.hhqp;
  const double s1 = std::sqrt(m * w[0] * hbar), s2 = std::sqrt(m * w[1] * hbar);
  const double r1 = std::sqrt(hbar / (m * w[0])), r2 = std::sqrt(hbar / (m * w[1]));
  const double s2_chi2 =
      reading.chi2_factor == SpectrumReading::Chi2Factor::printed ? std::sqrt(m * w[1]) * hbar : s2;

  const Complex chi1_num = I * h.xi[0] * kappa(0, 1) * s1 + h.xi[1] * lambda(0, 1) * s2 +
                           h.lambda[0] * kappa(0, -1) * r1 - I * h.lambda[1] * lambda(0, -1) * r2;
  const Complex chi2_num = h.xi[0] * lambda(1, 1) * s1 + I * h.xi[1] * kappa(1, 1) * s2_chi2 +
                           h.lambda[1] * kappa(1, -1) * r2 - I * h.lambda[0] * lambda(1, -1) * r1;
  sp.chi[0] = std::sqrt(2.0) * std::cosh(2.0 * sp.r[0]) * chi1_num / den1_chi;
  sp.chi[1] = std::sqrt(2.0) * std::cosh(2.0 * sp.r[1]) * chi2_num / den2_chi;

  const double sech1 = 1.0 / std::cosh(2.0 * sp.r[0]), sech2 = 1.0 / std::cosh(2.0 * sp.r[1]);
  sp.c_bar = 0.5 * sech1 * (Gp * cg - 2.0 * su * (lp * hbar + Fp * sg) + cu * (Gm + 2.0 * lm * hbar * sg));
  switch (reading.d_bar) {
    case SpectrumReading::DBar::printed:
      sp.d_bar = 0.5 * sech2 * (Gp + 2.0 * su * (lp * hbar * cg - Fp * sg) - cu * (Gm * cg - 2.0 * lm * hbar * sg));
      break;
    case SpectrumReading::DBar::cosh_on_g_plus:
      sp.d_bar = 0.5 * sech2 * (Gp * cg + 2.0 * su * (lp * hbar - Fp * sg) - cu * (Gm - 2.0 * lm * hbar * sg));
      break;
    case SpectrumReading::DBar::index_swap:
      sp.d_bar = 0.5 * sech2 * (Gp * cg - 2.0 * su * (lp * hbar + Fp * sg) - cu * (Gm + 2.0 * lm * hbar * sg));
      break;
  }
  sp.e_bar = h.omega[0] + h.omega[1] -
             0.5 * (sp.g[0] * cu2 * cu2 + sp.g[1] * su2 * su2 - hbar * lp * su) * (cg - 1.0);

  require_finite(sp.c_bar, "Cbar");
  require_finite(sp.d_bar, "Dbar");
  require_finite(sp.e_bar, "Ebar");
  require_finite(std::abs(sp.chi[0]) + std::abs(sp.chi[1]), "chi");
  return sp;
}

// E = C (n1 + 1/2) + D (n2 + 1/2) - offset
double level_offset(const SpectrumParams& sp) {
  return sp.c_bar * std::norm(sp.chi[0]) + sp.d_bar * std::norm(sp.chi[1]) - sp.e_bar;
}

}  // namespace

SpectrumParams spectrum_params(const OscillatorParams& osc, const AlgebraParams& alg,
                               const SWParams& sw, const DysonParams& d,
                               const SpectrumReading& reading) {
  osc.validate();
  const double w1 = osc.omega[0], w2 = osc.omega[1];
  const bool deformed = alg.theta() != 0.0 || alg.zeta() != 0.0;
  if (!deformed || std::abs(w1 - w2) > 1e-9 * std::max(w1, w2))
    return spectrum_params_regular(osc, alg, sw, d, reading);

  // Linear extrapolation from w2 = w1 (1 + h) and w1 (1 + 2h); O(h^2).
  constexpr double h = 1e-5;
  OscillatorParams near = osc, far = osc;
  near.omega[1] = w1 * (1.0 + h);
  far.omega[1] = w1 * (1.0 + 2.0 * h);
  const auto a = spectrum_params_regular(near, alg, sw, d, reading);
  const auto b = spectrum_params_regular(far, alg, sw, d, reading);
  SpectrumParams sp = a;
  sp.c_bar = 2.0 * a.c_bar - b.c_bar;
  sp.d_bar = 2.0 * a.d_bar - b.d_bar;
  sp.chi = {Complex{}, Complex{}};
  sp.e_bar = -(2.0 * level_offset(a) - level_offset(b));
  sp.hhqp = hhqp_coeffs(osc, alg, sw, hermitian_nc_coeffs(osc, alg, d.phases()));
  sp.degenerate_limit = true;
  return sp;
}

double closed_form_energy(const SpectrumParams& sp, int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw InvalidParameter("quantum numbers must be non-negative");
  return sp.c_bar * (n1 + 0.5) + sp.d_bar * (n2 + 0.5) -
         (sp.c_bar * std::norm(sp.chi[0]) + sp.d_bar * std::norm(sp.chi[1]) - sp.e_bar);
}

double closed_form_energy(const OscillatorParams& osc, const AlgebraParams& alg,
                          const SWParams& sw, const DysonParams& d, int n1, int n2,
                          const SpectrumReading& reading) {
  return closed_form_energy(spectrum_params(osc, alg, sw, d, reading), n1, n2);
}

std::vector<Level> closed_form_levels(const SpectrumParams& sp, int k) {
  std::vector<Level> all;
  for (int n1 = 0; n1 < k; ++n1)
    for (int n2 = 0; n2 < k; ++n2) all.push_back({n1, n2, closed_form_energy(sp, n1, n2)});
  std::sort(all.begin(), all.end(), [](const Level& a, const Level& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.n1 != b.n1) return a.n1 < b.n1;
    return a.n2 < b.n2;
  });
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(std::max(k, 0))));
  return all;
}

double limit_energy_nh_commutative(const OscillatorParams& osc, int n1, int n2,
                                   const LimitReading& reading) {
  const std::array<int, 2> n{n1, n2};
  double e = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double w = osc.omega[i];
    const double d = osc.delta[i].real();
    e += (n[i] + 0.5) * w * (reading.hbar_on_oscillator ? osc.hbar : 1.0);
    e += d * d / (2.0 * osc.m * w * w);
    if (reading.momentum_shift) e -= 0.5 * osc.m * osc.gamma[i] * osc.gamma[i];
  }
  return e;
}

double limit_energy_hermitian(const OscillatorParams& osc, const std::array<double, 2>& delta_tilde,
                              int n1, int n2, const LimitReading& reading) {
  const std::array<int, 2> n{n1, n2};
  double e = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double w = osc.omega[i];
    e += (n[i] + 0.5) * w * (reading.hbar_on_oscillator ? osc.hbar : 1.0);
    e -= delta_tilde[i] * delta_tilde[i] / (2.0 * osc.m * w * w);
    if (reading.momentum_shift) e -= 0.5 * osc.m * osc.gamma[i] * osc.gamma[i];
  }
  return e;
}

std::array<Complex, 2> displacement_params(const OscillatorParams& osc, const AlgebraParams& alg,
                                           const SWParams& sw, const DysonParams& d,
                                           const SpectrumReading& reading) {
  return spectrum_params(osc, alg, sw, d, reading).chi;
}

std::array<Complex, 2> displacement_nh_commutative(const OscillatorParams& osc,
                                                   const DysonPhases& phases) {
  std::array<Complex, 2> chi{};
  for (int i = 0; i < 2; ++i) {
    const double w = osc.omega[i];
    chi[i] = Complex{osc.delta[i].real() * std::tan(phases.B[i]) /
                         std::sqrt(2.0 * osc.m * osc.hbar * w * w * w),
                     osc.gamma[i] * std::sqrt(osc.m / (2.0 * w * osc.hbar))};
  }
  return chi;
}

std::array<Complex, 2> displacement_hermitian(const OscillatorParams& osc,
                                              const std::array<double, 2>& delta_tilde) {
  std::array<Complex, 2> chi{};
  for (int i = 0; i < 2; ++i) {
    const double w = osc.omega[i];
    chi[i] = Complex{-delta_tilde[i] / std::sqrt(2.0 * osc.m * w * w * w * osc.hbar),
                     osc.gamma[i] * std::sqrt(osc.m / (2.0 * w * osc.hbar))};
  }
  return chi;
}

}  // namespace nhnc
