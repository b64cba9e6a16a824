#include "nhnc/swmap.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "nhnc/errors.hpp"

namespace nhnc {

double solve_constraint(const AlgebraParams& alg, double mu) {
  if (mu == 0.0 || !std::isfinite(mu)) throw InvalidParameter("mu must be finite and nonzero");
  const double ratio = alg.deformation_ratio();
  if (!(ratio < 1.0)) throw InvalidAlgebra("theta*zeta/hbar^2 must be < 1");
  const double product = 0.5 * (1.0 + std::sqrt(1.0 - ratio));
  return product / mu;
}

SWParams::SWParams(double mu, double nu, AlgebraParams alg) : mu_(mu), nu_(nu), alg_(alg) {
  if (mu == 0.0 || nu == 0.0 || !std::isfinite(mu) || !std::isfinite(nu))
    throw InvalidParameter("mu and nu must be finite and nonzero");
  if (constraint_residual() >= kSWConstraintTolerance)
    throw InvalidAlgebra("(mu, nu) violate nu mu (1 - nu mu) = theta zeta / 4 hbar^2; residual " +
                         format_double(constraint_residual()));
}

SWParams SWParams::from_mu(const AlgebraParams& alg, double mu) {
  return SWParams(mu, solve_constraint(alg, mu), alg);
}

double SWParams::constraint_residual() const {
  const double x = nu_ * mu_;
  return std::abs(x * (1.0 - x) - 0.25 * alg_.deformation_ratio());
}

namespace {

using Mat4 = Eigen::Matrix<double, 4, 4, Eigen::RowMajor>;

Mat4 to_eigen(const LinearPhaseMap& m) { return Eigen::Map<const Mat4>(m.matrix.data()); }

LinearPhaseMap from_eigen(const Mat4& e) {
  LinearPhaseMap m;
  Eigen::Map<Mat4>(m.matrix.data()) = e;
  return m;
}

}  // namespace

double LinearPhaseMap::jacobian() const { return to_eigen(*this).determinant(); }

LinearPhaseMap LinearPhaseMap::inverse() const {
  Eigen::FullPivLU<Mat4> lu(to_eigen(*this));
  if (!lu.isInvertible()) throw InvalidAlgebra("linear phase-space map is singular");
  return from_eigen(lu.inverse());
}

LinearPhaseMap LinearPhaseMap::compose(const LinearPhaseMap& rhs) const {
  return from_eigen(to_eigen(*this) * to_eigen(rhs));
}

std::array<double, 4> LinearPhaseMap::apply(const std::array<double, 4>& z) const {
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out[r] += (*this)(r, c) * z[c];
  }
  return out;
}

LinearPhaseMap LinearPhaseMap::identity() { return from_eigen(Mat4::Identity()); }

double max_abs_diff(const LinearPhaseMap& a, const LinearPhaseMap& b) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a.matrix[i] - b.matrix[i]));
  return m;
}

LinearPhaseMap forward_map(const SWParams& sw) {
  const auto& alg = sw.algebra();
  const double mu = sw.mu(), nu = sw.nu(), hbar = alg.hbar();
  LinearPhaseMap m;
  auto at = [&](int r, int c) -> double& { return m.matrix[r * 4 + c]; };
  for (int k = 0; k < 2; ++k) {
    const int qk = k, pk = 2 + k;
    at(qk, qk) = nu;
    at(pk, pk) = mu;
    for (int l = 0; l < 2; ++l) {
      if (l == k) continue;
      at(qk, 2 + l) = -alg.theta_kl(k, l) / (2.0 * nu * hbar);
      at(pk, l) = alg.zeta_kl(k, l) / (2.0 * mu * hbar);
    }
  }
  return m;
}

LinearPhaseMap inverse_map(const SWParams& sw) {
  const auto& alg = sw.algebra();
  const double ratio = alg.deformation_ratio();
  if (!(ratio < 1.0)) throw InvalidAlgebra("theta*zeta/hbar^2 must be < 1");
  const double mu = sw.mu(), nu = sw.nu(), hbar = alg.hbar();
  const double k = 1.0 / std::sqrt(1.0 - ratio);
  LinearPhaseMap m;
  auto at = [&](int r, int c) -> double& { return m.matrix[r * 4 + c]; };
  for (int a = 0; a < 2; ++a) {
    const int qa = a, pa = 2 + a;
    at(qa, qa) = mu * k;
    at(pa, pa) = nu * k;
    for (int l = 0; l < 2; ++l) {
      if (l == a) continue;
      at(qa, 2 + l) = mu * k * alg.theta_kl(a, l) / (2.0 * nu * mu * hbar);
      at(pa, l) = -nu * k * alg.zeta_kl(a, l) / (2.0 * nu * mu * hbar);
    }
  }
  return m;
}

PhaseSymbol substitute(const PhaseSymbol& f, const LinearPhaseMap& map) {
  if (f.order().dimension() != 4) throw DimensionMismatch("substitute expects a two-mode symbol");
  return linear_substitute(f, map.matrix);
}

std::string render_csv(const LinearPhaseMap& map) {
  std::string out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (c) out += ',';
      out += format_double(map(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace nhnc
