#include "fisherflow/flow.hpp"

#include "fisherflow/parallel.hpp"
#include "fisherflow/report.hpp"

#include <array>
#include <cmath>
#include <ostream>

namespace fisherflow::flow {

namespace {

double mode_freq_sq(int m, int n) {
  return static_cast<double>(m) * m + static_cast<double>(n) * n - static_cast<double>(m) * n;
}

void damp_modes(transfer::FourierTable& coeffs, double dt) {
  const int M = coeffs.max_mode();
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      coeffs.at(m, n) *= std::exp(-0.5 * dt * mode_freq_sq(m, n));
    }
}

void check_positivity(const SpectralDensity& sd, const torus2d::PeriodicGrid& grid) {
  const auto samples = reconstruct_density(sd, grid);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i] > 0.0)) {
      const int nt = grid.n_t();
      const int si = static_cast<int>(i) / nt;
      const int tj = static_cast<int>(i) % nt;
      throw std::runtime_error(
          "flow: reconstructed density not positive (f = " + std::to_string(samples[i]) +
          ") at s = " + std::to_string(grid.node_s(si)) + ", t = " + std::to_string(grid.node_t(tj)) +
          ", time = " + std::to_string(sd.time));
    }
  }
}

}  // namespace

SpectralDensity spectral_density(const torus2d::TorusExpFamily& family,
                                 const torus2d::PeriodicGrid& grid, int max_mode) {
  if (grid.is_circle()) throw std::invalid_argument("spectral_density: needs a 2-D grid");
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  std::vector<double> w(grid.node_count());
  for (int i = 0; i < ns; ++i) {
    const double s = grid.node_s(i);
    for (int j = 0; j < nt; ++j) {
      const double t = grid.node_t(j);
      w[static_cast<std::size_t>(i) * nt + j] =
          std::exp(family.eps * (std::cos(s) + std::cos(t) + std::cos(s + t)));
    }
  }
  transfer::FourierTable table = transfer::fourier_coefficients(w, grid, max_mode);

  // Normalize to unit Haar mass: divide by the mean of exp(eps phi).
  const std::complex<double> z = table.at(0, 0);
  if (!(z.real() > 0.0)) throw std::runtime_error("spectral_density: non-positive mass");
  for (int m = -max_mode; m <= max_mode; ++m)
    for (int n = -max_mode; n <= max_mode; ++n) table.at(m, n) /= z;
  table.at(0, 0) = {1.0, 0.0};
  return SpectralDensity{std::move(table), 0.0};
}

SpectralDensity evolve(const torus2d::TorusExpFamily& family, double t,
                       const torus2d::PeriodicGrid& grid, int max_mode) {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  SpectralDensity sd = spectral_density(family, grid, max_mode);
  damp_modes(sd.coeffs, t);
  sd.time = t;
  check_positivity(sd, grid);
  return sd;
}

SpectralDensity evolve_further(const SpectralDensity& sd, double dt,
                               const torus2d::PeriodicGrid& grid) {
  if (dt < 0.0) throw std::invalid_argument("evolve_further: dt must be >= 0");
  SpectralDensity out = sd;
  damp_modes(out.coeffs, dt);
  out.time = sd.time + dt;
  check_positivity(out, grid);
  return out;
}

namespace {

// Spectral samples of f and its ambient-coordinate derivatives up to third
// order. Field p holds Re sum_c c(m,n) w_p(m,n) e^{i(ms+nt)} with w_p the
// derivative monomial in xi = m k1 + n k2.
struct SpectralFields {
  // 0: f; 1,2: fx, fy; 3,4,5: fxx, fxy, fyy; 6..9: fxxx, fxxy, fxyy, fyyy
  std::array<std::vector<double>, 10> field;
};

SpectralFields reconstruct_fields(const SpectralDensity& sd, const torus2d::PeriodicGrid& grid) {
  const int M = sd.coeffs.max_mode();
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  const auto waves = torus2d::TriadWaveSystem::standard();

  SpectralFields out;
  for (auto& f : out.field) f.assign(grid.node_count(), 0.0);

  // Derivative monomials per mode.
  const int side = 2 * M + 1;
  std::vector<std::array<std::complex<double>, 10>> weights(
      static_cast<std::size_t>(side) * side);
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      const Eigen::Vector2d xi = m * waves.k1 + n * waves.k2;
      const std::complex<double> i_unit{0.0, 1.0};
      const std::complex<double> c = sd.coeffs.at(m, n);
      auto& w = weights[static_cast<std::size_t>(m + M) * side + (n + M)];
      w[0] = c;
      w[1] = c * i_unit * xi.x();
      w[2] = c * i_unit * xi.y();
      w[3] = -c * xi.x() * xi.x();
      w[4] = -c * xi.x() * xi.y();
      w[5] = -c * xi.y() * xi.y();
      w[6] = -c * i_unit * xi.x() * xi.x() * xi.x();
      w[7] = -c * i_unit * xi.x() * xi.x() * xi.y();
      w[8] = -c * i_unit * xi.x() * xi.y() * xi.y();
      w[9] = -c * i_unit * xi.y() * xi.y() * xi.y();
    }

  // Stage 1: fold the t-axis. partial[p][m][b] = sum_n w_p(m,n) e^{i n t_b}.
  std::array<std::vector<std::complex<double>>, 10> partial;
  for (auto& p : partial) p.assign(static_cast<std::size_t>(side) * nt, {0.0, 0.0});
  for (int n = -M; n <= M; ++n) {
    for (int b = 0; b < nt; ++b) {
      const std::complex<double> e = std::polar(1.0, n * grid.node_t(b));
      for (int m = -M; m <= M; ++m) {
        const auto& w = weights[static_cast<std::size_t>(m + M) * side + (n + M)];
        const std::size_t idx = static_cast<std::size_t>(m + M) * nt + b;
        for (int p = 0; p < 10; ++p) partial[static_cast<std::size_t>(p)][idx] += w[static_cast<std::size_t>(p)] * e;
      }
    }
  }

  // Stage 2: fold the s-axis.
  for (int a = 0; a < ns; ++a) {
    for (int m = -M; m <= M; ++m) {
      const std::complex<double> e = std::polar(1.0, m * grid.node_s(a));
      for (int b = 0; b < nt; ++b) {
        const std::size_t src = static_cast<std::size_t>(m + M) * nt + b;
        const std::size_t dst = static_cast<std::size_t>(a) * nt + b;
        for (int p = 0; p < 10; ++p) {
          out.field[static_cast<std::size_t>(p)][dst] += (partial[static_cast<std::size_t>(p)][src] * e).real();
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> reconstruct_density(const SpectralDensity& sd,
                                        const torus2d::PeriodicGrid& grid) {
  const int M = sd.coeffs.max_mode();
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  const int side = 2 * M + 1;

  std::vector<std::complex<double>> partial(static_cast<std::size_t>(side) * nt, {0.0, 0.0});
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      const std::complex<double> c = sd.coeffs.at(m, n);
      for (int b = 0; b < nt; ++b) {
        partial[static_cast<std::size_t>(m + M) * nt + b] += c * std::polar(1.0, n * grid.node_t(b));
      }
    }
  std::vector<double> out(grid.node_count(), 0.0);
  for (int a = 0; a < ns; ++a)
    for (int m = -M; m <= M; ++m) {
      const std::complex<double> e = std::polar(1.0, m * grid.node_s(a));
      for (int b = 0; b < nt; ++b) {
        out[static_cast<std::size_t>(a) * nt + b] +=
            (partial[static_cast<std::size_t>(m + M) * nt + b] * e).real();
      }
    }
  return out;
}

namespace {

// Extended-precision triple used by the finite-difference identity checks,
// where second differences would otherwise sit at the double rounding floor.
struct TripleExt {
  long double i_val{0}, q_val{0}, d_val{0};
};

TripleExt functionals_at_time_ext(const SpectralDensity& sd, const torus2d::PeriodicGrid& grid,
                                  int workers);

}  // namespace

jets::FunctionalTriple functionals_at_time(const SpectralDensity& sd,
                                           const torus2d::PeriodicGrid& grid, int workers) {
  const TripleExt ext = functionals_at_time_ext(sd, grid, workers);
  return jets::FunctionalTriple::from_iqd(static_cast<double>(ext.i_val),
                                          static_cast<double>(ext.q_val),
                                          static_cast<double>(ext.d_val));
}

namespace {

TripleExt functionals_at_time_ext(const SpectralDensity& sd, const torus2d::PeriodicGrid& grid,
                                  int workers) {
  if (grid.is_circle()) throw std::invalid_argument("functionals_at_time: needs a 2-D grid");
  const SpectralFields fields = reconstruct_fields(sd, grid);
  const int ns = grid.n_s();
  const int nt = grid.n_t();

  struct RowAcc {
    long double mass{0}, j1f{0}, j2f{0}, j3f{0};
  };
  std::vector<RowAcc> rows(static_cast<std::size_t>(ns));

  parallel_rows(ns, workers, [&](int a) {
    RowAcc acc;
    Eigen::VectorXd grad_f(2);
    Eigen::MatrixXd hess_f(2, 2);
    jets::SymTensor3 third_f(2);
    for (int b = 0; b < nt; ++b) {
      const std::size_t idx = static_cast<std::size_t>(a) * nt + b;
      const double f = fields.field[0][idx];
      grad_f[0] = fields.field[1][idx];
      grad_f[1] = fields.field[2][idx];
      hess_f(0, 0) = fields.field[3][idx];
      hess_f(0, 1) = fields.field[4][idx];
      hess_f(1, 0) = fields.field[4][idx];
      hess_f(1, 1) = fields.field[5][idx];
      third_f.set(0, 0, 0, fields.field[6][idx]);
      third_f.set(0, 0, 1, fields.field[7][idx]);
      third_f.set(0, 1, 1, fields.field[8][idx]);
      third_f.set(1, 1, 1, fields.field[9][idx]);
      const jets::LogDensityJet jet = jets::jet_of_log_from_density_jet(
          f, grad_f, hess_f, third_f,
          "s = " + std::to_string(grid.node_s(a)) + ", t = " + std::to_string(grid.node_t(b)) +
              ", time = " + std::to_string(sd.time));
      const jets::IntegrandValues iv = jets::integrands_at(jet);
      acc.mass += f;
      acc.j1f += static_cast<long double>(iv.j1) * f;
      acc.j2f += static_cast<long double>(iv.j2) * f;
      acc.j3f += static_cast<long double>(iv.j3) * f;
    }
    rows[static_cast<std::size_t>(a)] = acc;
  });

  const auto reduce = [&](auto proj) {
    long double total = 0.0L;
    for (int i = 0; i < ns; ++i) total += proj(rows[static_cast<std::size_t>(i)]);
    return total;
  };
  const long double mass = reduce([](const RowAcc& r) { return r.mass; });
  return TripleExt{reduce([](const RowAcc& r) { return r.j1f; }) / mass,
                   reduce([](const RowAcc& r) { return r.j2f; }) / mass,
                   reduce([](const RowAcc& r) { return r.j3f; }) / mass};
}

}  // namespace

namespace {

// Fisher information of the damped base coefficients, evaluated end to end in
// long double. The damping is applied here (not taken from double-rounded
// coefficients) so that the quantity differenced by the identity stencils is
// the exact flow of one fixed initial condition.
long double fisher_information_ext(const transfer::FourierTable& base, double time,
                                   const torus2d::PeriodicGrid& grid) {
  using CL = std::complex<long double>;
  const int M = base.max_mode();
  const int ns = grid.n_s();
  const int nt = grid.n_t();
  const int side = 2 * M + 1;
  const auto waves = torus2d::TriadWaveSystem::standard();

  const auto twiddles = [side, M](int n_nodes, auto node) {
    std::vector<CL> tw(static_cast<std::size_t>(side) * n_nodes);
    for (int m = -M; m <= M; ++m)
      for (int a = 0; a < n_nodes; ++a) {
        const long double angle = static_cast<long double>(m) * node(a);
        tw[static_cast<std::size_t>(m + M) * n_nodes + a] = CL{std::cos(angle), std::sin(angle)};
      }
    return tw;
  };
  const auto tw_t = twiddles(nt, [&grid](int b) { return grid.node_t(b); });
  const auto tw_s = twiddles(ns, [&grid](int a) { return grid.node_s(a); });

  // Fields: f, fx, fy, lap f.
  std::array<std::vector<CL>, 4> partial;
  for (auto& p : partial) p.assign(static_cast<std::size_t>(side) * nt, CL{0.0L, 0.0L});

  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      const Eigen::Vector2d xi = m * waves.k1 + n * waves.k2;
      const long double freq_sq = static_cast<long double>(m) * m +
                                  static_cast<long double>(n) * n -
                                  static_cast<long double>(m) * n;
      const CL damped = CL(base.at(m, n)) *
                        std::exp(CL{-0.5L * static_cast<long double>(time) * freq_sq, 0.0L});
      const CL wx = damped * CL{0.0L, static_cast<long double>(xi.x())};
      const CL wy = damped * CL{0.0L, static_cast<long double>(xi.y())};
      const CL wlap = damped * CL{-freq_sq, 0.0L};
      const CL* e_row = &tw_t[static_cast<std::size_t>(n + M) * nt];
      for (int b = 0; b < nt; ++b) {
        const CL e = e_row[b];
        const std::size_t idx = static_cast<std::size_t>(m + M) * nt + b;
        partial[0][idx] += damped * e;
        partial[1][idx] += wx * e;
        partial[2][idx] += wy * e;
        partial[3][idx] += wlap * e;
      }
    }

  long double num = 0.0L;
  long double den = 0.0L;
  std::array<CL, 4> row;
  for (int a = 0; a < ns; ++a) {
    for (int b = 0; b < nt; ++b) {
      row.fill(CL{0.0L, 0.0L});
      for (int m = -M; m <= M; ++m) {
        const CL e = tw_s[static_cast<std::size_t>(m + M) * ns + a];
        const std::size_t idx = static_cast<std::size_t>(m + M) * nt + b;
        row[0] += partial[0][idx] * e;
        row[1] += partial[1][idx] * e;
        row[2] += partial[2][idx] * e;
        row[3] += partial[3][idx] * e;
      }
      const long double f = row[0].real();
      if (!(f > 0.0L)) {
        throw std::runtime_error("fisher_information_ext: density not positive");
      }
      const long double grad_sq = row[1].real() * row[1].real() + row[2].real() * row[2].real();
      num += grad_sq / f - row[3].real();
      den += f;
    }
  }
  return num / den;
}

}  // namespace

IdentityReport verify_identities(const torus2d::TorusExpFamily& family,
                                 std::span<const double> times, double dt,
                                 const torus2d::PeriodicGrid& grid, int max_mode, int workers) {
  if (!(dt > 0.0)) throw std::invalid_argument("verify_identities: dt must be positive");
  for (double t : times) {
    if (t < dt) throw std::invalid_argument("verify_identities: need t >= dt for central stencils");
    if (t > 1.0) throw std::invalid_argument("verify_identities: times must lie within [0, 1]");
  }

  const SpectralDensity base = spectral_density(family, grid, max_mode);
  const auto info_at = [&](double t) { return fisher_information_ext(base.coeffs, t, grid); };

  IdentityReport report;
  report.dt = dt;
  for (double t : times) {
    const TripleExt center = functionals_at_time_ext(evolve_further(base, t, grid), grid, workers);
    const long double center_info = info_at(t);

    const auto residuals = [&](double step, double& ip, double& is) {
      const long double lo = info_at(t - step);
      const long double hi = info_at(t + step);
      const long double di = (hi - lo) / (2.0L * step);
      const long double d2i =
          (hi - 2.0L * center_info + lo) / (static_cast<long double>(step) * step);
      ip = static_cast<double>(std::abs(di + center.q_val));
      is = static_cast<double>(std::abs(d2i - center.d_val));
    };

    IdentityResidualRow row;
    row.t = t;
    residuals(dt, row.iprime_residual, row.isecond_residual);
    residuals(dt / 2.0, row.iprime_residual_half, row.isecond_residual_half);
    row.iprime_order_ratio =
        row.iprime_residual_half > 0.0 ? row.iprime_residual / row.iprime_residual_half : 0.0;
    row.isecond_order_ratio =
        row.isecond_residual_half > 0.0 ? row.isecond_residual / row.isecond_residual_half : 0.0;
    report.rows.push_back(row);
    report.max_iprime_residual = std::max(report.max_iprime_residual, row.iprime_residual);
    report.max_isecond_residual = std::max(report.max_isecond_residual, row.isecond_residual);
  }
  return report;
}

FlowProfile flow_profile(const torus2d::TorusExpFamily& family, std::span<const double> times,
                         const torus2d::PeriodicGrid& grid, int max_mode, int workers) {
  const SpectralDensity base = spectral_density(family, grid, max_mode);
  FlowProfile profile;
  double prev = -1.0;
  for (double t : times) {
    if (t < 0.0 || t <= prev) {
      throw std::invalid_argument("flow_profile: times must be nonnegative and strictly increasing");
    }
    prev = t;
    const SpectralDensity sd = evolve_further(base, t, grid);
    const jets::FunctionalTriple triple = functionals_at_time(sd, grid, workers);
    profile.times.push_back(t);
    profile.triples.push_back(triple);
    profile.phi_defect.push_back(triple.defect);
  }
  return profile;
}

void write_csv(const FlowProfile& profile, std::ostream& os) {
  os << "t,i,q,d,defect,ratio\n";
  for (std::size_t i = 0; i < profile.times.size(); ++i) {
    const auto& tr = profile.triples[i];
    os << report::format_full(profile.times[i]) << ',' << report::format_full(tr.i_val) << ','
       << report::format_full(tr.q_val) << ',' << report::format_full(tr.d_val) << ','
       << report::format_full(tr.i_val * tr.d_val - tr.q_val * tr.q_val) << ','
       << (tr.ratio.has_value() ? report::format_full(*tr.ratio) : "nan") << '\n';
  }
}

}  // namespace fisherflow::flow
