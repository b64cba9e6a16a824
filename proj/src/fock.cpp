#include "nhnc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhnc/errors.hpp"

namespace nhnc {

FockConfig FockConfig::for_oscillator(const OscillatorParams& osc, int cutoff) {
  FockConfig cfg;
  cfg.cutoff = cutoff;
  cfg.m = osc.m;
  cfg.omega = osc.omega;
  cfg.hbar = osc.hbar;
  return cfg;
}

void FockConfig::validate() const {
  if (cutoff < 2) throw InvalidParameter("Fock cutoff must be >= 2");
  if (!(m > 0.0) || !(hbar > 0.0) || !(omega[0] > 0.0) || !(omega[1] > 0.0))
    throw InvalidParameter("Fock reference m, w_i, hbar must be positive");
}

double HermitianMatrix::hermiticity_defect() const {
  return (data - data.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

using Eigen::MatrixXcd;

// Single-mode quadratures on n < size.
void single_mode(int size, double m, double w, double hbar, MatrixXcd& q, MatrixXcd& p) {
  q = MatrixXcd::Zero(size, size);
  p = MatrixXcd::Zero(size, size);
  const double sq = std::sqrt(hbar / (2.0 * m * w));
  const double sp = std::sqrt(m * w * hbar / 2.0);
  for (int n = 1; n < size; ++n) {
    const double s = std::sqrt(static_cast<double>(n));
    // a |n> = sqrt(n) |n-1>
    q(n - 1, n) = sq * s;
    q(n, n - 1) = sq * s;
    p(n, n - 1) = Complex{0.0, sp * s};
    p(n - 1, n) = Complex{0.0, -sp * s};
  }
}

// out += c * (A (x) B)
void add_kron(MatrixXcd& out, Complex c, const MatrixXcd& a, const MatrixXcd& b) {
  const Eigen::Index n = b.rows();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      out.block(i * n, j * n, n, n) += (c * aij) * b;
    }
  }
}

// Exact truncated single-mode operators for every monomial of degree <= 2 in
// (Q_i, P_i), indexed by exponent pair (a, b) for Q^a P^b (Weyl ordered).
struct ModeOps {
  MatrixXcd id, q, p, qq, pp, qp_weyl;

  const MatrixXcd& get(int a, int b) const {
    if (a == 0 && b == 0) return id;
    if (a == 1 && b == 0) return q;
    if (a == 0 && b == 1) return p;
    if (a == 2 && b == 0) return qq;
    if (a == 0 && b == 2) return pp;
    return qp_weyl;  // (1, 1)
  }
};

ModeOps mode_ops(int n, double m, double w, double hbar) {
  MatrixXcd q, p;
  single_mode(n + 2, m, w, hbar, q, p);
  ModeOps ops;
  ops.id = MatrixXcd::Identity(n, n);
  ops.q = q.topLeftCorner(n, n);
  ops.p = p.topLeftCorner(n, n);
  const MatrixXcd qq = q * q, pp = p * p, qp = 0.5 * (q * p + p * q);
  ops.qq = qq.topLeftCorner(n, n);
  ops.pp = pp.topLeftCorner(n, n);
  ops.qp_weyl = qp.topLeftCorner(n, n);
  return ops;
}

}  // namespace

QuadratureMatrices quadrature_matrices(const FockConfig& cfg) {
  cfg.validate();
  const int n = cfg.cutoff;
  QuadratureMatrices out;
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  for (int mode = 0; mode < 2; ++mode) {
    MatrixXcd q, p;
    single_mode(n, cfg.m, cfg.omega[mode], cfg.hbar, q, p);
    out.Q[mode] = MatrixXcd::Zero(cfg.dimension(), cfg.dimension());
    out.P[mode] = MatrixXcd::Zero(cfg.dimension(), cfg.dimension());
    if (mode == 0) {
      add_kron(out.Q[0], 1.0, q, id);
      add_kron(out.P[0], 1.0, p, id);
    } else {
      add_kron(out.Q[1], 1.0, id, q);
      add_kron(out.P[1], 1.0, id, p);
    }
  }
  return out;
}

HermitianMatrix quantize(const PhaseSymbol& symbol, const FockConfig& cfg) {
  cfg.validate();
  const auto& order = symbol.order();
  if (order.dimension() != 4) throw DimensionMismatch("quantize expects a two-mode symbol");
  if (symbol.degree() > 2)
    throw UnsupportedSymbol("quantize supports total degree <= 2, got " +
                            std::to_string(symbol.degree()));
  const double tol = 1e-10 * std::max(1.0, max_abs_coeff(symbol));
  if (max_abs_imag(symbol) > tol)
    throw NonHermitianSymbol("symbol has complex coefficients (max |Im| = " +
                             format_double(max_abs_imag(symbol)) + ")");

  const int n = cfg.cutoff;
  const std::array<ModeOps, 2> ops{mode_ops(n, cfg.m, cfg.omega[0], cfg.hbar),
                                   mode_ops(n, cfg.m, cfg.omega[1], cfg.hbar)};
  HermitianMatrix h;
  h.data = MatrixXcd::Zero(cfg.dimension(), cfg.dimension());
  for (const auto& [e, c] : symbol.terms()) {
    const double coeff = c.real();
    if (coeff == 0.0) continue;
    const int q1 = e[order.position(0)], q2 = e[order.position(1)];
    const int p1 = e[order.momentum(0)], p2 = e[order.momentum(1)];
    add_kron(h.data, coeff, ops[0].get(q1, p1), ops[1].get(q2, p2));
  }
  h.data = 0.5 * (h.data + h.data.adjoint()).eval();
  if (h.hermiticity_defect() > 1e-10) throw NonHermitianSymbol("quantized matrix is not Hermitian");
  return h;
}

std::vector<double> eigenvalues(const HermitianMatrix& h, int k) {
  if (k < 0 || k > h.dimension())
    throw InvalidParameter("requested " + std::to_string(k) + " eigenvalues of a " +
                           std::to_string(h.dimension()) + "-dimensional matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.data, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NonConvergence("Hermitian eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + k);
}

ConvergedSpectrum converged_spectrum(const PhaseSymbol& symbol, int k, double rtol,
                                     const FockConfig& base, int max_cutoff) {
  if (!(rtol > 0.0)) throw InvalidParameter("rtol must be positive");
  if (max_cutoff <= kFirstCutoff || max_cutoff > kMaxCutoff)
    throw InvalidParameter("cutoff cap must lie in (" + std::to_string(kFirstCutoff) + ", " +
                           std::to_string(kMaxCutoff) + "]");
  const double scale = base.hbar * std::min(base.omega[0], base.omega[1]);
  FockConfig cfg = base;
  cfg.cutoff = kFirstCutoff;
  std::vector<double> previous = eigenvalues(quantize(symbol, cfg), k);
  double worst = 0.0;
  while (cfg.cutoff < max_cutoff) {
    cfg.cutoff = std::min(2 * cfg.cutoff, max_cutoff);
    auto current = eigenvalues(quantize(symbol, cfg), k);
    worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const double denom = std::max(std::abs(current[i]), scale);
      worst = std::max(worst, std::abs(current[i] - previous[i]) / denom);
    }
    if (worst < rtol) return {current, cfg.cutoff};
    previous = std::move(current);
  }
  std::ostringstream os;
  os << "Fock spectrum not converged at cutoff " << max_cutoff << " (relative change "
     << format_double(worst) << " >= rtol " << format_double(rtol) << ")";
  throw NonConvergence(os.str());
}

GroundStateMoments ground_state_moments(const PhaseSymbol& symbol, const FockConfig& cfg) {
  const auto h = quantize(symbol, cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.data);
  if (solver.info() != Eigen::Success) throw NonConvergence("Hermitian eigensolver failed");
  const Eigen::VectorXcd v = solver.eigenvectors().col(0);
  const auto quads = quadrature_matrices(cfg);
  GroundStateMoments out;
  out.energy = solver.eigenvalues()(0);
  for (int i = 0; i < 2; ++i) {
    out.mean_Q[i] = v.dot(quads.Q[i] * v).real();
    out.mean_P[i] = v.dot(quads.P[i] * v).real();
  }
  return out;
}

std::vector<double> NormalModeSpectrum::levels(int k) const {
  std::vector<double> out;
  for (int n1 = 0; n1 < k; ++n1)
    for (int n2 = 0; n2 < k; ++n2)
      out.push_back(ground_energy + hbar * (n1 * frequencies[0] + n2 * frequencies[1]));
  std::sort(out.begin(), out.end());
  out.resize(std::min<std::size_t>(out.size(), static_cast<std::size_t>(std::max(k, 0))));
  return out;
}

NormalModeSpectrum normal_mode_spectrum(const PhaseSymbol& symbol, double hbar) {
  const auto& order = symbol.order();
  if (order.dimension() != 4) throw DimensionMismatch("normal modes expect a two-mode symbol");
  if (symbol.degree() > 2) throw UnsupportedSymbol("normal modes need a quadratic symbol");
  // z = (Q1, Q2, P1, P2)
  const std::array<int, 4> idx{order.position(0), order.position(1), order.momentum(0),
                               order.momentum(1)};
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  Eigen::Vector4d b = Eigen::Vector4d::Zero();
  for (int a = 0; a < 4; ++a) {
    Exponents e(4, 0);
    e[idx[a]] = 1;
    b(a) = symbol.coefficient(e).real();
    e[idx[a]] = 2;
    M(a, a) = 2.0 * symbol.coefficient(e).real();
    for (int c = a + 1; c < 4; ++c) {
      Exponents ec(4, 0);
      ec[idx[a]] = 1;
      ec[idx[c]] = 1;
      M(a, c) = M(c, a) = symbol.coefficient(ec).real();
    }
  }
  Eigen::LLT<Eigen::Matrix4d> llt(M);
  if (llt.info() != Eigen::Success)
    throw DomainError("quadratic form is not positive definite; no bounded ground state");

  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  J.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  Eigen::EigenSolver<Eigen::Matrix4d> es(J * M, false);
  std::vector<double> w;
  for (int i = 0; i < 4; ++i) {
    const double im = es.eigenvalues()(i).imag();
    if (im > 0.0) w.push_back(im);
  }
  if (w.size() != 2) throw NonConvergence("symplectic eigenvalues not resolved");
  std::sort(w.begin(), w.end());

  NormalModeSpectrum out;
  out.hbar = hbar;
  out.frequencies = {w[0], w[1]};
  const Eigen::Vector4d zmin = -llt.solve(b);
  for (int a = 0; a < 4; ++a) out.minimum[a] = zmin(a);
  out.ground_energy =
      0.5 * hbar * (w[0] + w[1]) + symbol.constant_term().real() + 0.5 * b.dot(zmin);
  return out;
}

}  // namespace nhnc
