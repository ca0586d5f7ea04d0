// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include "fisherflow/asymptotics.hpp"
#include "fisherflow/compose.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/reference.hpp"
#include "fisherflow/simplex.hpp"
#include "fisherflow/torus2d.hpp"
#include "fisherflow/transfer.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace fisherflow;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// 1. Reference-table reproduction at 256x256, M = 16, within 5 s.
void criterion_1() {
  namespace ref = reference;
  const auto start = std::chrono::steady_clock::now();
  const auto grid = torus2d::PeriodicGrid::square(256);
  bool ok = true;
  std::string detail;
  for (const auto& row : ref::kEnvelopeR1000) {
    const auto t = transfer::euclidean_functionals({row.eps, ref::kEnvelopeRadius}, grid, 16);
    const bool row_ok =
        std::abs(t.i_val - row.i_val) <= ref::kFunctionalRelTol * row.i_val &&
        std::abs(t.q_val - row.q_val) <= ref::kFunctionalRelTol * row.q_val &&
        std::abs(t.d_val - row.d_val) <= ref::kFunctionalRelTol * row.d_val &&
        std::abs(t.defect - row.defect) <= ref::kDefectRelTol * std::abs(row.defect) &&
        t.defect < 0.0 && t.ratio.has_value() &&
        std::abs(*t.ratio - row.ratio) <= ref::kRatioAbsTol;
    if (!row_ok) {
      ok = false;
      detail += " row eps=" + sci(row.eps) + " off;";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 5.0) ok = false;
  report(1, ok,
         "reference table rows (4 eps, R=1000) within tolerances, runtime " +
             sci(elapsed) + " s < 5 s" + detail);
}

// 2. Nine hexagonal averages to 1e-12 at 128x128, within 1 s.
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  const auto av = torus2d::hexagonal_average_table(torus2d::PeriodicGrid::square(128));
  const double values[9] = {av.grad_sq, av.phi_grad_sq, av.hess_sq,
                            av.phi_hess_sq, av.third_sq, av.phi_third_sq,
                            av.tr_hess3, av.phi_sq, av.phi_cubed};
  bool ok = true;
  double max_err = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double err = std::abs(values[i] - reference::kHexagonalAverages[static_cast<std::size_t>(i)].value);
    max_err = std::max(max_err, err);
    if (err > 1e-12) ok = false;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) ok = false;
  report(2, ok,
         "nine hexagonal averages, max abs error " + sci(max_err) +
             " <= 1e-12, runtime " + sci(elapsed) + " s < 1 s");
}

// 3. Defect quintic coefficient -9/32 within 1% over {0.01, 0.02, 0.04}.
void criterion_3() {
  const auto grid = torus2d::PeriodicGrid::square(128);
  const double window[] = {0.01, 0.02, 0.04};
  const auto fit = asymptotics::fit_series(
      [&](double e) { return torus2d::torus_functionals({e}, grid).defect; }, 5, window);
  const double rel = std::abs(fit.c_lead - (-0.28125)) / 0.28125;
  report(3, rel <= 1e-2,
         "torus defect quintic coefficient " + sci(fit.c_lead) +
             " vs -0.28125, rel err " + sci(rel) + " <= 1%");
}

// 4. Quotient slopes: torus -1/8 (2%), simplex d=3 -1/4 (2%), circle 0 (5e-3).
void criterion_4() {
  const double window[] = {0.01, 0.02, 0.04};
  const auto grid = torus2d::PeriodicGrid::square(128);
  const double torus_slope = asymptotics::quotient_slope(
      [&](double e) { return torus2d::torus_functionals({e}, grid); }, window);

  const auto sys3 = simplex::build_simplex_system(3);
  simplex::SimplexQuadrature quad;
  quad.nodes_per_angle = 48;
  quad.workers = 2;
  const double simplex_slope = asymptotics::quotient_slope(
      [&](double e) { return simplex::simplex_functionals({e, sys3}, quad); }, window);

  const auto circle_grid = torus2d::PeriodicGrid::circle(256);
  const double circle_slope = asymptotics::quotient_slope(
      [&](double e) { return torus2d::circle_functionals({e}, circle_grid); }, window);

  const bool ok = std::abs(torus_slope - (-0.125)) / 0.125 <= 2e-2 &&
                  std::abs(simplex_slope - (-0.25)) / 0.25 <= 2e-2 &&
                  std::abs(circle_slope) <= 5e-3;
  report(4, ok,
         "quotient slopes: torus " + sci(torus_slope) + " (-0.125 +- 2%), simplex d=3 " +
             sci(simplex_slope) + " (-0.25 +- 2%), circle " +
             sci(circle_slope) + " (0 +- 5e-3)");
}

// 5. Simplex fitted coefficients vs closed forms (2%) and d=2 agreement with
//    the hexagonal model to 1e-10.
void criterion_5() {
  bool ok = true;
  std::string detail;
  const std::vector<double> window = {0.005, 0.01, 0.02};
  for (int d : {2, 3}) {
    const auto sys = simplex::build_simplex_system(d);
    simplex::SimplexQuadrature quad;
    quad.nodes_per_angle = 48;
    quad.workers = 2;
    const auto eval = [&](double e) { return simplex::simplex_functionals({e, sys}, quad); };
    const auto fits = asymptotics::fit_coefficients(eval, window, "simplex");
    const auto cf = simplex::simplex_closed_form_coeffs(d);
    const auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
    if (rel(fits.i_fit.c_lead, cf.s.value()) > 2e-2 ||
        rel(fits.q_fit.c_lead, cf.s.value()) > 2e-2 ||
        rel(fits.d_fit.c_lead, cf.s.value()) > 2e-2 ||
        rel(fits.i_fit.c_next, cf.alpha.value()) > 2e-2 ||
        rel(fits.q_fit.c_next, cf.gamma.value()) > 2e-2 ||
        rel(fits.d_fit.c_next, cf.delta.value()) > 2e-2) {
      ok = false;
      detail += " d=" + std::to_string(d) + " fit off;";
    }
  }

  const auto sys2 = simplex::build_simplex_system(2);
  simplex::SimplexQuadrature quad2;
  quad2.nodes_per_angle = 64;
  const auto s2 = simplex::simplex_functionals({0.05, sys2}, quad2);
  const auto t2 = torus2d::torus_functionals({0.05}, torus2d::PeriodicGrid::square(64));
  if (std::abs(s2.i_val - t2.i_val) > 1e-10 || std::abs(s2.q_val - t2.q_val) > 1e-10 ||
      std::abs(s2.d_val - t2.d_val) > 1e-10) {
    ok = false;
    detail += " d=2 disagrees with hexagonal model;";
  }
  report(5, ok, "simplex closed forms fitted within 2% (d=2,3), d=2 = hexagonal to 1e-10" + detail);
}

// 6. Heat-flow identity residuals and the defect profile, within 10 s.
void criterion_6() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = torus2d::PeriodicGrid::square(128);
  const torus2d::TorusExpFamily family{0.05};

  const double times[] = {0.02, 0.05, 0.1};
  const auto rep = flow::verify_identities(family, times, 1e-3, grid, 24);
  bool ok = rep.max_iprime_residual < 1e-5 && rep.max_isecond_residual < 1e-5;
  for (const auto& row : rep.rows) {
    if (row.iprime_order_ratio < 3.5 || row.iprime_order_ratio > 4.5 ||
        row.isecond_order_ratio < 3.5 || row.isecond_order_ratio > 4.5) {
      ok = false;
    }
  }

  std::vector<double> profile_times;
  for (int i = 0; i <= 10; ++i) profile_times.push_back(0.01 * i);
  const auto profile = flow::flow_profile(family, profile_times, grid, 24);
  for (double defect : profile.phi_defect) {
    if (!(defect < 0.0)) ok = false;
  }

  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) ok = false;
  report(6, ok,
         "identity residuals (max " + sci(rep.max_iprime_residual) + ", " +
             sci(rep.max_isecond_residual) +
             ") < 1e-5 with order ratios in [3.5, 4.5]; defect < 0 on 11 times in [0, 0.1]; "
             "runtime " +
             sci(elapsed) + " s < 10 s");
}

// 7. Composition laws.
void criterion_7() {
  bool ok = true;
  std::string detail;

  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> dist(0.01, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = jets::FunctionalTriple::from_iqd(dist(rng), dist(rng), dist(rng));
    const auto b = jets::FunctionalTriple::from_iqd(dist(rng), dist(rng), dist(rng));
    const auto p = compose::product_triple(a, b);
    if (p.i_val != a.i_val + b.i_val || p.q_val != a.q_val + b.q_val ||
        p.d_val != a.d_val + b.d_val) {
      ok = false;
      detail += " additivity broke;";
      break;
    }
  }

  for (double sigma : {0.7, 1.0, 2.5}) {
    for (int dim : {1, 2, 5}) {
      const auto block = compose::gaussian_block(dim, sigma);
      if (!block.ratio.has_value() || std::abs(*block.ratio - 2.0) > 1e-14) {
        ok = false;
        detail += " block ratio != 2;";
      }
    }
    const auto brute = oracle::gaussian_block_quadrature(sigma, 4096);
    const auto block = compose::gaussian_block(1, sigma);
    if (std::abs(block.i_val - brute.i_val) > 1e-12 * block.i_val ||
        std::abs(block.q_val - brute.q_val) > 1e-12 * block.q_val ||
        std::abs(block.d_val - brute.d_val) > 1e-12 * block.d_val) {
      ok = false;
      detail += " block quadrature off;";
    }
  }

  const auto t = jets::FunctionalTriple::from_iqd(0.9, 1.7, 2.2);
  for (double r : {0.1, 2.0, 10.0}) {
    const auto scaled = compose::rescale_triple(t, r);
    if (!scaled.ratio.has_value() || *scaled.ratio != *t.ratio) {
      ok = false;
      detail += " rescale ratio not exact;";
    }
  }

  const auto base = oracle::scaled_circle_envelope_triple(0.1, 4.0, 1.0, 65536);
  const auto brute = oracle::scaled_circle_envelope_triple(0.1, 4.0, 0.5, 65536);
  const auto lib = compose::rescale_triple(
      jets::FunctionalTriple::from_iqd(base.i_val, base.q_val, base.d_val), 0.5);
  if (std::abs(lib.i_val - brute.i_val) / brute.i_val > 1e-8 ||
      std::abs(lib.q_val - brute.q_val) / brute.q_val > 1e-8 ||
      std::abs(lib.d_val - brute.d_val) / brute.d_val > 1e-8) {
    ok = false;
    detail += " scaling law vs quadrature off;";
  }

  report(7, ok,
         "composition laws: additivity exact (100 pairs), block ratio = 2 and quadrature to "
         "1e-12, rescale ratio exact, scaling laws to rel 1e-8" +
             detail);
}

// 8. Separated-mixture additivity.
void criterion_8() {
  compose::MixtureSpec spec;
  spec.eta = 0.3;
  spec.r = 1.0;
  compose::MixtureQuadrature quad;
  const auto pred = compose::mixture_additivity_prediction(spec);

  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  double dev40 = 0.0;
  for (double sep : {10.0, 20.0, 40.0}) {
    spec.separation = sep;
    const auto t = compose::mixture_functionals(spec, quad);
    const double dev = std::max({std::abs(t.i_val - pred.i_val), std::abs(t.q_val - pred.q_val),
                                 std::abs(t.d_val - pred.d_val)});
    if (dev > prev) ok = false;  // non-strict: the tail saturates at rounding noise
    prev = dev;
    if (sep == 40.0) dev40 = dev;
  }
  if (!(dev40 < 1e-6)) ok = false;
  report(8, ok,
         "mixture additivity: deviation at L=40 " + sci(dev40) +
             " < 1e-6, nonincreasing over L in {10, 20, 40}");
}

// 9. Transfer limit: five periodic fields at R = 10 to 1e-12; monotone triples.
void criterion_9() {
  const auto grid = torus2d::PeriodicGrid::square(256);
  const double eps = 0.05;
  const auto waves = torus2d::TriadWaveSystem::standard();

  double sw = 0, sphi = 0, shess = 0, sthird = 0, str3 = 0;
  for (int i = 0; i < grid.n_s(); ++i)
    for (int j = 0; j < grid.n_t(); ++j) {
      const auto f = torus2d::phi_fields_at(waves, grid.node_s(i), grid.node_t(j));
      const double w = std::exp(eps * f.phi);
      sw += w;
      sphi += f.phi * w;
      shess += f.hess_sq * w;
      sthird += f.third_sq * w;
      str3 += f.tr_hess3 * w;
    }
  const auto av = transfer::envelope_averages({eps, 10.0}, grid, 16);
  const double d0_torus = eps * eps * (sthird / sw) - 2.0 * eps * eps * eps * (str3 / sw);
  const double d0_env = eps * eps * av.third_sq - 2.0 * eps * eps * eps * av.tr_hess3;
  const double errs[5] = {std::abs(av.phi - sphi / sw), std::abs(av.hess_sq - shess / sw),
                          std::abs(av.third_sq - sthird / sw), std::abs(av.tr_hess3 - str3 / sw),
                          std::abs(d0_env - d0_torus)};
  bool ok = true;
  double max_err = 0.0;
  for (double e : errs) {
    max_err = std::max(max_err, e);
    if (e > 1e-12) ok = false;
  }

  const auto coarse = torus2d::PeriodicGrid::square(128);
  const auto torus = torus2d::torus_functionals({eps}, coarse);
  double prev_i = std::numeric_limits<double>::infinity(), prev_q = prev_i, prev_d = prev_i;
  for (double radius : {5.0, 10.0, 20.0}) {
    const auto t = transfer::euclidean_functionals({eps, radius}, coarse, 16);
    const double di = std::abs(t.i_val - torus.i_val);
    const double dq = std::abs(t.q_val - torus.q_val);
    const double dd = std::abs(t.d_val - torus.d_val);
    if (di >= prev_i || dq >= prev_q || dd >= prev_d) ok = false;
    prev_i = di;
    prev_q = dq;
    prev_d = dd;
  }

  report(9, ok,
         "transfer limit: five fields at R=10 to max err " + sci(max_err) +
             " <= 1e-12; triples at R in {5, 10, 20} approach the torus triple monotonically");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
