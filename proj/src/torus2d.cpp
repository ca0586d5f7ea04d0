#include "fisherflow/torus2d.hpp"

#include "fisherflow/parallel.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fisherflow::torus2d {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TriadWaveSystem TriadWaveSystem::standard() {
  TriadWaveSystem w;
  const double h = std::sqrt(3.0) / 2.0;
  w.k1 = Eigen::Vector2d(1.0, 0.0);
  w.k2 = Eigen::Vector2d(-0.5, h);
  w.k3 = Eigen::Vector2d(-0.5, -h);
  const Eigen::Vector2d k[3] = {w.k1, w.k2, w.k3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w.gram(i, j) = k[i].dot(k[j]);
  return w;
}

PeriodicGrid::PeriodicGrid(int n_s, int n_t) : n_s_(n_s), n_t_(n_t) {
  const auto check_axis = [](int n, const char* axis) {
    if (n < 4 || n % 2 != 0) {
      throw std::invalid_argument(std::string("PeriodicGrid: ") + axis +
                                  " node count must be even and >= 4, got " + std::to_string(n));
    }
  };
  check_axis(n_s_, "s");
  if (n_t_ != 0) check_axis(n_t_, "t");
}

PeriodicGrid PeriodicGrid::square(int n) { return PeriodicGrid(n, n); }
PeriodicGrid PeriodicGrid::rect(int n_s, int n_t) { return PeriodicGrid(n_s, n_t); }
PeriodicGrid PeriodicGrid::circle(int n) { return PeriodicGrid(n, 0); }

std::size_t PeriodicGrid::node_count() const {
  return is_circle() ? static_cast<std::size_t>(n_s_)
                     : static_cast<std::size_t>(n_s_) * static_cast<std::size_t>(n_t_);
}

double PeriodicGrid::node_s(int i) const { return kTwoPi * i / n_s_; }
double PeriodicGrid::node_t(int j) const { return kTwoPi * j / n_t_; }

PhiJet phi_jet_at(const TriadWaveSystem& waves, double s, double t) {
  const double theta[3] = {s, t, -(s + t)};
  const Eigen::Vector2d k[3] = {waves.k1, waves.k2, waves.k3};

  PhiJet out{0.0, Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero(), jets::SymTensor3(2)};
  Eigen::VectorXd kv(2);
  for (int j = 0; j < 3; ++j) {
    const double c = std::cos(theta[j]);
    const double sn = std::sin(theta[j]);
    out.phi += c;
    out.grad -= sn * k[j];
    out.hess -= c * (k[j] * k[j].transpose());
    kv = k[j];
    out.third.add_rank_one(sn, kv);
  }
  return out;
}

PhiFields phi_fields_at(const TriadWaveSystem& waves, double s, double t) {
  const PhiJet jet = phi_jet_at(waves, s, t);
  PhiFields f;
  f.phi = jet.phi;
  f.grad_sq = jet.grad.squaredNorm();
  f.hess_sq = jet.hess.squaredNorm();
  f.third_sq = jet.third.squared_norm();
  const Eigen::Matrix2d h2 = jet.hess * jet.hess;
  f.tr_hess3 = (h2 * jet.hess).trace();
  return f;
}

double haar_average(std::span<const double> samples, const PeriodicGrid& grid) {
  if (samples.size() != grid.node_count()) {
    throw std::invalid_argument("haar_average: sample count does not match grid");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw std::invalid_argument("haar_average: non-finite sample");
  }
  return pairwise_sum(samples) / static_cast<double>(samples.size());
}

HexagonalAverages hexagonal_average_table(const PeriodicGrid& grid) {
  if (grid.is_circle()) {
    throw std::invalid_argument("hexagonal_average_table: needs a 2-D grid");
  }
  const TriadWaveSystem waves = TriadWaveSystem::standard();
  const int ns = grid.n_s();
  const int nt = grid.n_t();

  // Nine accumulators, one partial value per s-row for a deterministic reduce.
  std::vector<std::array<double, 9>> rows(static_cast<std::size_t>(ns));
  for (int i = 0; i < ns; ++i) {
    const double s = grid.node_s(i);
    std::array<double, 9> acc{};
    for (int j = 0; j < nt; ++j) {
      const PhiFields f = phi_fields_at(waves, s, grid.node_t(j));
      acc[0] += f.grad_sq;
      acc[1] += f.phi * f.grad_sq;
      acc[2] += f.hess_sq;
      acc[3] += f.phi * f.hess_sq;
      acc[4] += f.third_sq;
      acc[5] += f.phi * f.third_sq;
      acc[6] += f.tr_hess3;
      acc[7] += f.phi * f.phi;
      acc[8] += f.phi * f.phi * f.phi;
    }
    rows[static_cast<std::size_t>(i)] = acc;
  }

  std::array<double, 9> total{};
  std::vector<double> column(static_cast<std::size_t>(ns));
  for (int q = 0; q < 9; ++q) {
    for (int i = 0; i < ns; ++i) column[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)][q];
    total[static_cast<std::size_t>(q)] = pairwise_sum(column) / grid.node_count();
  }

  return HexagonalAverages{total[0], total[1], total[2], total[3], total[4],
                           total[5], total[6], total[7], total[8]};
}

jets::FunctionalTriple torus_functionals(const TorusExpFamily& family, const PeriodicGrid& grid,
                                         int workers) {
  if (grid.is_circle()) {
    throw std::invalid_argument("torus_functionals: needs a 2-D grid");
  }
  const double eps = family.eps;
  const int ns = grid.n_s();
  const int nt = grid.n_t();

  struct RowAcc {
    double w{0}, j1w{0}, j2w{0}, j3w{0};
  };
  std::vector<RowAcc> rows(static_cast<std::size_t>(ns));

  parallel_rows(ns, workers, [&](int i) {
    const double s = grid.node_s(i);
    RowAcc acc;
    jets::LogDensityJet jet = jets::LogDensityJet::zero(2);
    for (int j = 0; j < nt; ++j) {
      const PhiJet pj = phi_jet_at(family.waves, s, grid.node_t(j));
      jet.u = eps * pj.phi;
      jet.grad = eps * pj.grad;
      jet.hess = eps * pj.hess;
      jet.third = pj.third;
      jet.third.scale(eps);
      const jets::IntegrandValues iv = jets::integrands_at(jet);
      const double w = std::exp(jet.u);
      acc.w += w;
      acc.j1w += iv.j1 * w;
      acc.j2w += iv.j2 * w;
      acc.j3w += iv.j3 * w;
    }
    rows[static_cast<std::size_t>(i)] = acc;
  });

  std::vector<double> col(static_cast<std::size_t>(ns));
  const auto reduce = [&](auto proj) {
    for (int i = 0; i < ns; ++i) col[static_cast<std::size_t>(i)] = proj(rows[static_cast<std::size_t>(i)]);
    return pairwise_sum(col);
  };
  const double w_sum = reduce([](const RowAcc& r) { return r.w; });
  const double i_val = reduce([](const RowAcc& r) { return r.j1w; }) / w_sum;
  const double q_val = reduce([](const RowAcc& r) { return r.j2w; }) / w_sum;
  const double d_val = reduce([](const RowAcc& r) { return r.j3w; }) / w_sum;
  return jets::FunctionalTriple::from_iqd(i_val, q_val, d_val);
}

jets::FunctionalTriple circle_functionals(const CircleExpFamily& family, const PeriodicGrid& grid) {
  if (!grid.is_circle()) {
    throw std::invalid_argument("circle_functionals: needs a one-axis grid");
  }
  const double eps = family.eps;
  const int n = grid.n_s();

  double w_sum = 0.0, j1w = 0.0, j2w = 0.0, j3w = 0.0;
  jets::LogDensityJet jet = jets::LogDensityJet::zero(1);
  for (int i = 0; i < n; ++i) {
    const double x = grid.node_s(i);
    const double c = std::cos(x);
    const double sn = std::sin(x);
    jet.u = eps * c;
    jet.grad[0] = -eps * sn;
    jet.hess(0, 0) = -eps * c;
    jet.third.set(0, 0, 0, eps * sn);
    const jets::IntegrandValues iv = jets::integrands_at(jet);
    const double w = std::exp(jet.u);
    w_sum += w;
    j1w += iv.j1 * w;
    j2w += iv.j2 * w;
    j3w += iv.j3 * w;
  }
  return jets::FunctionalTriple::from_iqd(j1w / w_sum, j2w / w_sum, j3w / w_sum);
}

}  // namespace fisherflow::torus2d
