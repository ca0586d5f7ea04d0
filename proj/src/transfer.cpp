#include "fisherflow/transfer.hpp"

#include <cmath>
#include <numbers>

namespace fisherflow::transfer {

namespace {

// Twiddle factors exp(-i m theta_a) for m in [-M, M], a in [0, n).
std::vector<std::complex<double>> twiddle_table(int n, int max_mode) {
  std::vector<std::complex<double>> tw(static_cast<std::size_t>(2 * max_mode + 1) * n);
  for (int m = -max_mode; m <= max_mode; ++m) {
    for (int a = 0; a < n; ++a) {
      const double angle = -2.0 * std::numbers::pi * m * a / n;
      tw[static_cast<std::size_t>(m + max_mode) * n + a] = std::polar(1.0, angle);
    }
  }
  return tw;
}

}  // namespace

EnvelopeFamily::EnvelopeFamily(double eps_in, double radius_in) : eps(eps_in), radius(radius_in) {
  if (!(radius > 0.0)) throw std::invalid_argument("EnvelopeFamily: radius must be positive");
  c_r = 1.0 / (radius * radius);
}

FourierTable::FourierTable(int max_mode) : max_mode_(max_mode) {
  if (max_mode < 0) throw std::invalid_argument("FourierTable: max_mode must be >= 0");
  const std::size_t side = static_cast<std::size_t>(2 * max_mode + 1);
  coeffs_.assign(side * side, {0.0, 0.0});
}

std::size_t FourierTable::index(int m, int n) const {
  if (m < -max_mode_ || m > max_mode_ || n < -max_mode_ || n > max_mode_) {
    throw std::out_of_range("FourierTable: mode out of range");
  }
  return static_cast<std::size_t>(m + max_mode_) * (2 * max_mode_ + 1) +
         static_cast<std::size_t>(n + max_mode_);
}

double shell_weight(int m, int n, double radius) {
  const double freq_sq = static_cast<double>(m) * m + static_cast<double>(n) * n -
                         static_cast<double>(m) * n;
  const double log_w = -0.5 * radius * radius * freq_sq;
  if (log_w < -700.0) return 0.0;
  return std::exp(log_w);
}

void FourierTable::attach_shell(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("attach_shell: radius must be positive");
  radius_ = radius;
  const int M = max_mode_;
  shell_.assign(coeffs_.size(), 0.0);
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) shell_[index(m, n)] = shell_weight(m, n, radius);
}

double FourierTable::shell(int m, int n) const {
  if (shell_.empty()) throw std::logic_error("FourierTable: shell not attached");
  return shell_[index(m, n)];
}

double FourierTable::shell_contraction() const {
  if (shell_.empty()) throw std::logic_error("FourierTable: shell not attached");
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) total += coeffs_[i].real() * shell_[i];
  return total;
}

FourierTable fourier_coefficients(std::span<const double> samples,
                                  const torus2d::PeriodicGrid& grid, int max_mode) {
  if (grid.is_circle()) {
    throw std::invalid_argument("fourier_coefficients: needs a 2-D grid");
  }
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  if (samples.size() != grid.node_count()) {
    throw std::invalid_argument("fourier_coefficients: sample count does not match grid");
  }
  if (max_mode >= std::min(ns, nt) / 2) {
    throw std::invalid_argument("fourier_coefficients: max_mode " + std::to_string(max_mode) +
                                " too large for grid " + std::to_string(ns) + "x" +
                                std::to_string(nt));
  }

  const int M = max_mode;
  const int side = 2 * M + 1;
  const auto tw_s = twiddle_table(ns, M);
  const auto tw_t = twiddle_table(nt, M);

  // Stage 1: partial transform over s for each t-column.
  std::vector<std::complex<double>> partial(static_cast<std::size_t>(side) * nt, {0.0, 0.0});
  for (int m = -M; m <= M; ++m) {
    const std::complex<double>* tws = &tw_s[static_cast<std::size_t>(m + M) * ns];
    std::complex<double>* row = &partial[static_cast<std::size_t>(m + M) * nt];
    for (int a = 0; a < ns; ++a) {
      const double* g = &samples[static_cast<std::size_t>(a) * nt];
      const std::complex<double> w = tws[a];
      for (int b = 0; b < nt; ++b) row[b] += w * g[b];
    }
  }

  // Stage 2: transform over t and normalize.
  FourierTable table(M);
  const double norm = 1.0 / (static_cast<double>(ns) * nt);
  for (int m = -M; m <= M; ++m) {
    const std::complex<double>* row = &partial[static_cast<std::size_t>(m + M) * nt];
    for (int n = -M; n <= M; ++n) {
      const std::complex<double>* twt = &tw_t[static_cast<std::size_t>(n + M) * nt];
      std::complex<double> acc{0.0, 0.0};
      for (int b = 0; b < nt; ++b) acc += row[b] * twt[b];
      table.at(m, n) = acc * norm;
    }
  }
  return table;
}

namespace {

// Samples exp(eps * phi) on the grid.
std::vector<double> weight_samples(double eps, const torus2d::PeriodicGrid& grid) {
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  std::vector<double> w(grid.node_count());
  for (int i = 0; i < ns; ++i) {
    const double s = grid.node_s(i);
    for (int j = 0; j < nt; ++j) {
      const double t = grid.node_t(j);
      const double phi = std::cos(s) + std::cos(t) + std::cos(s + t);
      w[static_cast<std::size_t>(i) * nt + j] = std::exp(eps * phi);
    }
  }
  return w;
}

double shell_ratio(std::span<const double> numerator_samples, std::span<const double> weight,
                   double radius, const torus2d::PeriodicGrid& grid, int max_mode) {
  std::vector<double> gw(numerator_samples.size());
  for (std::size_t i = 0; i < gw.size(); ++i) gw[i] = numerator_samples[i] * weight[i];

  FourierTable num = fourier_coefficients(gw, grid, max_mode);
  FourierTable den = fourier_coefficients(weight, grid, max_mode);
  num.attach_shell(radius);
  den.attach_shell(radius);

  const double den_value = den.shell_contraction();
  if (!(den_value > 0.0) || !std::isfinite(den_value)) {
    throw std::runtime_error("gaussian_weighted_average: non-positive normalization");
  }
  const double num_value = num.shell_contraction();
  if (!std::isfinite(num_value)) {
    throw std::runtime_error("gaussian_weighted_average: non-finite numerator");
  }
  return num_value / den_value;
}

}  // namespace

double gaussian_weighted_average(std::span<const double> g_samples, double eps, double radius,
                                 const torus2d::PeriodicGrid& grid, int max_mode) {
  const std::vector<double> w = weight_samples(eps, grid);
  return shell_ratio(g_samples, w, radius, grid, max_mode);
}

EnvelopeAverages envelope_averages(const EnvelopeFamily& family, const torus2d::PeriodicGrid& grid,
                                   int max_mode) {
  if (grid.is_circle()) {
    throw std::invalid_argument("envelope_averages: needs a 2-D grid");
  }
  const auto waves = torus2d::TriadWaveSystem::standard();
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  const std::size_t count = grid.node_count();

  std::vector<double> w(count), phi(count), hess_sq(count), third_sq(count), tr3(count);
  for (int i = 0; i < ns; ++i) {
    const double s = grid.node_s(i);
    for (int j = 0; j < nt; ++j) {
      const torus2d::PhiFields f = torus2d::phi_fields_at(waves, s, grid.node_t(j));
      const std::size_t idx = static_cast<std::size_t>(i) * nt + j;
      phi[idx] = f.phi;
      hess_sq[idx] = f.hess_sq;
      third_sq[idx] = f.third_sq;
      tr3[idx] = f.tr_hess3;
      w[idx] = std::exp(family.eps * f.phi);
    }
  }

  EnvelopeAverages out;
  out.phi = shell_ratio(phi, w, family.radius, grid, max_mode);
  out.hess_sq = shell_ratio(hess_sq, w, family.radius, grid, max_mode);
  out.third_sq = shell_ratio(third_sq, w, family.radius, grid, max_mode);
  out.tr_hess3 = shell_ratio(tr3, w, family.radius, grid, max_mode);
  return out;
}

jets::FunctionalTriple euclidean_functionals(const EnvelopeFamily& family,
                                             const torus2d::PeriodicGrid& grid, int max_mode) {
  const double eps = family.eps;
  const double c = family.c_r;
  const EnvelopeAverages av = envelope_averages(family, grid, max_mode);

  const double i_val = eps * av.phi + 2.0 * c;
  const double q_val = eps * eps * av.hess_sq + 2.0 * eps * c * av.phi + 2.0 * c * c;
  const double d0 = eps * eps * av.third_sq - 2.0 * eps * eps * eps * av.tr_hess3;
  const double d_val =
      d0 + 6.0 * eps * eps * c * av.hess_sq + 6.0 * eps * c * c * av.phi + 4.0 * c * c * c;
  return jets::FunctionalTriple::from_iqd(i_val, q_val, d_val);
}

}  // namespace fisherflow::transfer
