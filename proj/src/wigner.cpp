#include "nhnc/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nhnc/errors.hpp"
#include "nhnc/kernels.hpp"

namespace nhnc {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> trapezoid_weights(const GridAxis& axis) {
  std::vector<double> w(axis.count, axis.step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

std::vector<double> grid_weights(const PhaseGrid& grid) {
  const auto wq = trapezoid_weights(grid.q), wp = trapezoid_weights(grid.p);
  std::vector<double> w(grid.values.size());
  for (int i = 0; i < grid.q.count; ++i)
    for (int j = 0; j < grid.p.count; ++j) w[static_cast<std::size_t>(i) * grid.p.count + j] = wq[i] * wp[j];
  return w;
}

std::array<Complex, 4> section_point(int mode, double q, double p) {
  const VariableOrder order(2);
  std::array<Complex, 4> z{};
  z[order.position(mode)] = q;
  z[order.momentum(mode)] = p;
  return z;
}

void require_section(const PhaseSymbol& f, int mode, const char* what) {
  if (f.order().dimension() != 4) throw DimensionMismatch(std::string(what) + " must be a two-mode symbol");
  if (!f.depends_only_on_mode(mode))
    throw SliceError(std::string(what) + " involves variables outside the (Q" + std::to_string(mode + 1) +
                     ", P" + std::to_string(mode + 1) + ") section");
}

// Values of the observable (real part) at every grid node.
std::vector<double> sample(const PhaseGrid& grid, const std::function<Complex(std::span<const Complex>)>& f) {
  std::vector<double> out(grid.values.size());
  for (int i = 0; i < grid.q.count; ++i) {
    for (int j = 0; j < grid.p.count; ++j) {
      const auto z = section_point(grid.mode, grid.q.at(i), grid.p.at(j));
      out[static_cast<std::size_t>(i) * grid.p.count + j] = f(z).real();
    }
  }
  return out;
}

// Physicists' Hermite polynomials H_0..H_n at x.
std::vector<double> hermite(int n, double x) {
  std::vector<double> h(n + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * x;
  for (int k = 1; k < n; ++k) h[k + 1] = 2.0 * x * h[k] - 2.0 * k * h[k - 1];
  return h;
}

}  // namespace

void PhaseGrid::validate() const {
  if (q.count < kMinGridCount || p.count < kMinGridCount)
    throw DomainError("phase grid needs at least " + std::to_string(kMinGridCount) + " points per axis");
  if (!(q.max > q.min) || !(p.max > p.min)) throw DomainError("phase grid axes must have max > min");
  if (values.size() != static_cast<std::size_t>(q.count) * p.count)
    throw DomainError("phase grid value count does not match its axes");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("phase grid contains non-finite values");
}

FockStateVector::FockStateVector(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidParameter("empty Fock state");
  double norm = 0.0;
  for (const auto& c : coeffs_) norm += std::norm(c);
  if (std::abs(norm - 1.0) > 1e-10)
    throw InvalidParameter("Fock state norm " + format_double(std::sqrt(norm)) + " differs from 1");
}

FockStateVector FockStateVector::number(int n) {
  if (n < 0) throw InvalidParameter("number state index must be >= 0");
  std::vector<Complex> c(n + 1, 0.0);
  c[n] = 1.0;
  return FockStateVector(std::move(c));
}

FockStateVector FockStateVector::normalized(std::vector<Complex> coeffs) {
  double norm = 0.0;
  for (const auto& c : coeffs) norm += std::norm(c);
  if (!(norm > 0.0)) throw InvalidParameter("cannot normalize a zero Fock state");
  for (auto& c : coeffs) c /= std::sqrt(norm);
  return FockStateVector(std::move(coeffs));
}

Complex position_wavefunction(const FockStateVector& state, double m, double omega, double hbar,
                              Complex x) {
  const Complex xi = x * std::sqrt(m * omega / hbar);
  // Normalized Hermite functions by the stable three-term recurrence.
  Complex prev = std::pow(m * omega / (kPi * hbar), 0.25) * std::exp(-0.5 * xi * xi);
  const auto& c = state.coeffs();
  Complex sum = c[0] * prev;
  if (c.size() == 1) return sum;
  Complex cur = std::sqrt(2.0) * xi * prev;
  sum += c[1] * cur;
  for (std::size_t n = 1; n + 1 < c.size(); ++n) {
    const double nd = static_cast<double>(n);
    const Complex next = std::sqrt(2.0 / (nd + 1.0)) * xi * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    sum += c[n + 1] * cur;
  }
  return sum;
}

double position_density(const FockStateVector& state, double m, double omega, double hbar,
                        double x) {
  return std::norm(position_wavefunction(state, m, omega, hbar, Complex{x, 0.0}));
}

void wigner_of_wavefunction(const Wavefunction& psi, double hbar, PhaseGrid& grid, double y_span,
                            int y_count) {
  if (y_count < 3 || !(y_span > 0.0)) throw DomainError("invalid y quadrature");
  GridAxis y{-y_span, y_span, y_count};
  const auto wy = trapezoid_weights(y);
  const int np = grid.p.count;
  // cos(P y / hbar) and sin(P y / hbar), one row per P node.
  std::vector<double> cos_table(static_cast<std::size_t>(np) * y_count);
  std::vector<double> sin_table(cos_table.size());
  for (int j = 0; j < np; ++j) {
    for (int l = 0; l < y_count; ++l) {
      const double phase = grid.p.at(j) * y.at(l) / hbar;
      cos_table[static_cast<std::size_t>(j) * y_count + l] = std::cos(phase);
      sin_table[static_cast<std::size_t>(j) * y_count + l] = std::sin(phase);
    }
  }
  grid.values.assign(static_cast<std::size_t>(grid.q.count) * np, 0.0);
  std::vector<double> re(y_count), im(y_count);
  const double norm = 1.0 / (2.0 * kPi * hbar);
  for (int i = 0; i < grid.q.count; ++i) {
    const double q = grid.q.at(i);
    for (int l = 0; l < y_count; ++l) {
      const Complex f = wy[l] * psi(q + 0.5 * y.at(l)) * std::conj(psi(q - 0.5 * y.at(l)));
      re[l] = f.real();
      im[l] = f.imag();
    }
    for (int j = 0; j < np; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * y_count;
      // Re[exp(-i P y / hbar) f] = Re f cos + Im f sin
      grid.values[static_cast<std::size_t>(i) * np + j] =
          norm * kernels::dot2(re.data(), cos_table.data() + row, im.data(), sin_table.data() + row, y_count);
    }
  }
}

PhaseGrid auto_grid(const FockStateVector& state, double m, double omega, double hbar, int mode,
                    int count, double n_sigma) {
  const double level = 2.0 * state.max_level() + 1.0;
  const double sq = std::sqrt(level * hbar / (2.0 * m * omega));
  const double sp = std::sqrt(level * m * omega * hbar / 2.0);
  PhaseGrid g;
  g.mode = mode;
  g.q = {-n_sigma * sq, n_sigma * sq, count};
  g.p = {-n_sigma * sp, n_sigma * sp, count};
  return g;
}

PhaseGrid wigner_of_state(const FockStateVector& state, double m, double omega, double hbar,
                          const PhaseGrid& grid) {
  PhaseGrid out = grid;
  out.values.assign(static_cast<std::size_t>(grid.q.count) * grid.p.count, 0.0);
  out.validate();
  const double reach = std::max(std::abs(grid.q.min), std::abs(grid.q.max));
  // Nyquist margin for cos(P y / hbar): at least ~16 nodes per shortest period.
  const double p_max = std::max(std::abs(grid.p.min), std::abs(grid.p.max));
  const double y_span = 2.0 * reach;
  const int y_count = std::max(4 * grid.q.count + 1,
                               static_cast<int>(std::ceil(2.0 * y_span * p_max * 16.0 / (2.0 * kPi * hbar))) + 1);
  wigner_of_wavefunction(
      [&](double x) { return position_wavefunction(state, m, omega, hbar, Complex{x, 0.0}); }, hbar, out,
      y_span, y_count);
  out.validate();
  const double mass = grid_mass(out);
  if (std::abs(mass - 1.0) > 1e-6)
    throw DomainError("Wigner grid mass " + format_double(mass) +
                      " differs from 1 by more than 1e-6; widen the grid");
  return out;
}

PhaseGrid wigner_of_state(const FockStateVector& state, double m, double omega, double hbar, int mode) {
  return wigner_of_state(state, m, omega, hbar, auto_grid(state, m, omega, hbar, mode));
}

PhaseGrid translate(PhaseGrid grid, double q0, double p0) {
  grid.q.min += q0;
  grid.q.max += q0;
  grid.p.min += p0;
  grid.p.max += p0;
  return grid;
}

double grid_mass(const PhaseGrid& grid) {
  const auto w = grid_weights(grid);
  return kernels::dot(w.data(), grid.values.data(), w.size());
}

double expectation(const PhaseGrid& grid, const PhaseSymbol& observable) {
  require_section(observable, grid.mode, "observable");
  const auto w = grid_weights(grid);
  const auto o = sample(grid, [&](std::span<const Complex> z) { return eval(observable, z); });
  return kernels::dot3(w.data(), grid.values.data(), o.data(), w.size());
}

std::vector<double> position_marginal(const PhaseGrid& grid) {
  const auto wp = trapezoid_weights(grid.p);
  std::vector<double> out(grid.q.count);
  for (int i = 0; i < grid.q.count; ++i)
    out[i] = kernels::dot(wp.data(), grid.values.data() + static_cast<std::size_t>(i) * grid.p.count, wp.size());
  return out;
}

PhaseGrid pushforward(const PhaseGrid& grid, const SWParams& sw) {
  const auto map = forward_map(sw);
  const VariableOrder order(2);
  const int qi = order.position(grid.mode), pi = order.momentum(grid.mode);
  for (int row : {qi, pi}) {
    for (int col = 0; col < 4; ++col) {
      if (col == qi || col == pi) continue;
      if (map(row, col) != 0.0)
        throw SliceError("Seiberg-Witten map couples the section to the other mode (entry " +
                         format_double(map(row, col)) + ")");
    }
  }
  if (map(qi, pi) != 0.0 || map(pi, qi) != 0.0) throw SliceError("section map is not diagonal");
  const double a = map(qi, qi), b = map(pi, pi);
  // q = a Q, p = b P; W(q, p) = W(Q, P) / |a b|.
  PhaseGrid out = grid;
  const double jac = 1.0 / std::abs(a * b);
  out.q = {std::min(a * grid.q.min, a * grid.q.max), std::max(a * grid.q.min, a * grid.q.max), grid.q.count};
  out.p = {std::min(b * grid.p.min, b * grid.p.max), std::max(b * grid.p.min, b * grid.p.max), grid.p.count};
  for (int i = 0; i < grid.q.count; ++i) {
    const int si = a > 0 ? i : grid.q.count - 1 - i;
    for (int j = 0; j < grid.p.count; ++j) {
      const int sj = b > 0 ? j : grid.p.count - 1 - j;
      out.values[static_cast<std::size_t>(i) * grid.p.count + j] = jac * grid.at(si, sj);
    }
  }
  return out;
}

double metric_weighted_expectation(const PhaseGrid& grid_nh, const ExpLinear& metric,
                                   const PhaseSymbol& observable, const AlgebraParams& alg) {
  require_section(observable, grid_nh.mode, "observable");
  const VariableOrder order(2);
  if (metric.coeffs.size() != 4) throw DimensionMismatch("metric must be a two-mode exponential");
  for (int a = 0; a < 4; ++a) {
    if (order.mode_of(a) != grid_nh.mode && metric.coeffs[a] != Complex{})
      throw SliceError("metric involves the other mode");
  }
  const ExpPoly product = exp_star_poly(metric, observable, alg);
  require_section(product.poly, grid_nh.mode, "metric-weighted observable");

  const auto w = grid_weights(grid_nh);
  const auto o = sample(grid_nh, [&](std::span<const Complex> z) { return product.eval(z); });
  std::vector<double> integrand(w.size());
  double peak = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    integrand[k] = grid_nh.values[k] * o[k];
    if (!std::isfinite(integrand[k])) throw DomainError("metric-weighted integrand overflows");
    peak = std::max(peak, std::abs(integrand[k]));
  }
  double edge = 0.0;
  const int nq = grid_nh.q.count, np = grid_nh.p.count;
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) {
      if (i != 0 && i != nq - 1 && j != 0 && j != np - 1) continue;
      edge = std::max(edge, std::abs(integrand[static_cast<std::size_t>(i) * np + j]));
    }
  }
  if (edge > 1e-8 * peak)
    throw DomainError("metric growth outpaces the Wigner decay at the grid boundary (edge/peak = " +
                      format_double(peak > 0.0 ? edge / peak : 0.0) + ")");
  return kernels::dot3(w.data(), grid_nh.values.data(), o.data(), w.size());
}

DerivativeJet ground_wigner_jet(int mode, double m, double omega, double hbar, double q, double p) {
  const VariableOrder order(2);
  const int qi = order.position(mode), pi = order.momentum(mode);
  const double a = m * omega / hbar, b = 1.0 / (m * omega * hbar);
  // d^k/dx^k exp(-a x^2) = (-sqrt a)^k H_k(sqrt a x) exp(-a x^2)
  auto derivative = [](int k, double coef, double x) {
    const double s = std::sqrt(coef);
    return std::pow(-s, k) * hermite(k, s * x)[k] * std::exp(-coef * x * x);
  };
  return [=](const Exponents& e) -> Complex {
    for (int v = 0; v < 4; ++v)
      if (v != qi && v != pi && e[v] != 0) return 0.0;
    return derivative(e[qi], a, q) * derivative(e[pi], b, p) / (kPi * hbar);
  };
}

double star_value_residual(const PhaseSymbol& h, double energy, const PhaseGrid& grid, double m,
                           double omega, const AlgebraParams& alg) {
  require_section(h, grid.mode, "Hamiltonian");
  const double hbar = alg.hbar();
  double worst = 0.0;
  for (int i = 0; i < grid.q.count; ++i) {
    for (int j = 0; j < grid.p.count; ++j) {
      const double q = grid.q.at(i), p = grid.p.at(j);
      const auto jet = ground_wigner_jet(grid.mode, m, omega, hbar, q, p);
      const auto z = section_point(grid.mode, q, p);
      const Complex hw = star_product_at(h, jet, z, alg);
      const Complex w0 = jet(Exponents(4, 0));
      worst = std::max(worst, std::abs(hw - energy * w0));
    }
  }
  return worst;
}

std::string to_csv(const PhaseGrid& grid) {
  std::ostringstream os;
  os << "# section=" << grid.mode + 1 << " Q:min=" << format_double(grid.q.min)
     << ",max=" << format_double(grid.q.max) << ",count=" << grid.q.count
     << " P:min=" << format_double(grid.p.min) << ",max=" << format_double(grid.p.max)
     << ",count=" << grid.p.count << " normalization=" << format_double(grid_mass(grid)) << "\n";
  os << "Q,P,W\n";
  for (int i = 0; i < grid.q.count; ++i)
    for (int j = 0; j < grid.p.count; ++j)
      os << format_double(grid.q.at(i)) << ',' << format_double(grid.p.at(j)) << ','
         << format_double(grid.at(i, j)) << '\n';
  return os.str();
}

}  // namespace nhnc
