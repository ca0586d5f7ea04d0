#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fisherflow/simplex.hpp"
#include "fisherflow/torus2d.hpp"

#include <cmath>
#include <set>

using namespace fisherflow;

TEST_CASE("simplex wave system geometry") {
  for (int d = 2; d <= 5; ++d) {
    const auto sys = simplex::build_simplex_system(d);
    const int verts = d + 1;
    CHECK(sys.root_count() == verts * (verts - 1) / 2);
    CHECK(static_cast<int>(sys.triangles.size()) == verts * (verts - 1) * (verts - 2) / 6);

    for (int r = 0; r < sys.root_count(); ++r) {
      CHECK(std::abs(sys.roots.row(r).norm() - 1.0) <= 1e-14);
    }
    for (const auto& tri : sys.triangles) {
      const Eigen::VectorXd closure = sys.roots.row(sys.root_index(tri[0], tri[1])) +
                                      sys.roots.row(sys.root_index(tri[1], tri[2])) -
                                      sys.roots.row(sys.root_index(tri[0], tri[2]));
      CHECK(closure.norm() <= 1e-14);
    }
    for (int a = 0; a < sys.root_count(); ++a)
      for (int b = 0; b < sys.root_count(); ++b) {
        const double g = sys.gram(a, b);
        const bool admissible = std::abs(g - 1.0) <= 1e-13 || std::abs(g + 1.0) <= 1e-13 ||
                                std::abs(g - 0.5) <= 1e-13 || std::abs(g + 0.5) <= 1e-13 ||
                                std::abs(g) <= 1e-13;
        CHECK(admissible);
      }
  }
  CHECK_THROWS_AS(simplex::build_simplex_system(1), std::invalid_argument);
  CHECK_THROWS_AS(simplex::build_simplex_system(7), std::invalid_argument);
}

TEST_CASE("d = 2 gram table matches the hexagonal triad up to root signs") {
  const auto sys = simplex::build_simplex_system(2);
  const auto triad = torus2d::TriadWaveSystem::standard();
  // The triangle {k01, k12, -k02} is the resonant triad.
  const int r01 = sys.root_index(0, 1);
  const int r12 = sys.root_index(1, 2);
  const int r02 = sys.root_index(0, 2);
  const double signs[3] = {1.0, 1.0, -1.0};
  const int order[3] = {r01, r12, r02};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double got = signs[a] * signs[b] * sys.gram(order[a], order[b]);
      CHECK(got == doctest::Approx(triad.gram(a, b)).epsilon(1e-14));
    }
}

TEST_CASE("closed-form coefficients") {
  const auto c2 = simplex::simplex_closed_form_coeffs(2);
  CHECK(c2.s == Rational{3, 2});
  CHECK(c2.alpha == Rational{3, 4});
  CHECK(c2.gamma == Rational{3, 8});
  CHECK(c2.delta == Rational{-3, 16});
  CHECK(c2.slope == Rational{-1, 8});

  const auto c3 = simplex::simplex_closed_form_coeffs(3);
  CHECK(c3.s == Rational{3, 1});
  CHECK(c3.alpha == Rational{3, 1});
  CHECK(c3.gamma == Rational{3, 2});
  CHECK(c3.delta == Rational{-3, 4});
  CHECK(c3.slope == Rational{-1, 4});

  const auto c1 = simplex::simplex_closed_form_coeffs(1);
  CHECK(c1.slope == Rational{0, 1});
  CHECK(c1.alpha == Rational{0, 1});

  CHECK_THROWS_AS(simplex::simplex_closed_form_coeffs(0), std::invalid_argument);
}

TEST_CASE("phi moments count the resonant triangles") {
  // <phi^2> = N_d / 2 and <phi^3> = (3/2) T_d: each triangle contributes an
  // identical two-dimensional resonance average.
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  for (int d : {2, 3}) {
    const auto sys = simplex::build_simplex_system(d);
    const int nodes = 32;
    double sum2 = 0.0, sum3 = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> angles(static_cast<std::size_t>(d + 1), 0.0);
    const std::uint64_t total = [&] {
      std::uint64_t t = 1;
      for (int a = 0; a < d; ++a) t *= static_cast<std::uint64_t>(nodes);
      return t;
    }();
    for (std::uint64_t flat = 0; flat < total; ++flat) {
      for (int a = 0; a < d; ++a) angles[static_cast<std::size_t>(a)] = kTwoPi * idx[static_cast<std::size_t>(a)] / nodes;
      double phi = 0.0;
      for (const auto& [vi, vj] : sys.pairs) {
        phi += std::cos(angles[static_cast<std::size_t>(vi)] - angles[static_cast<std::size_t>(vj)]);
      }
      sum2 += phi * phi;
      sum3 += phi * phi * phi;
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] < nodes) break;
        idx[static_cast<std::size_t>(a)] = 0;
      }
    }
    const double n_roots = sys.root_count();
    const double n_triangles = static_cast<double>(sys.triangles.size());
    CHECK(sum2 / static_cast<double>(total) == doctest::Approx(n_roots / 2.0).epsilon(1e-12));
    CHECK(sum3 / static_cast<double>(total) ==
          doctest::Approx(1.5 * n_triangles).epsilon(1e-12));
  }
}

TEST_CASE("d = 2 functionals coincide with the hexagonal model") {
  const auto sys = simplex::build_simplex_system(2);
  simplex::SimplexQuadrature quad;
  quad.nodes_per_angle = 64;
  const auto s = simplex::simplex_functionals({0.05, sys}, quad);
  const auto t = torus2d::torus_functionals({0.05}, torus2d::PeriodicGrid::square(64));
  CHECK(std::abs(s.i_val - t.i_val) <= 1e-10);
  CHECK(std::abs(s.q_val - t.q_val) <= 1e-10);
  CHECK(std::abs(s.d_val - t.d_val) <= 1e-10);
}

TEST_CASE("eps = 0 gives the flat triple") {
  const auto sys = simplex::build_simplex_system(3);
  simplex::SimplexQuadrature quad;
  quad.nodes_per_angle = 16;
  const auto t = simplex::simplex_functionals({0.0, sys}, quad);
  CHECK(t.i_val == 0.0);
  CHECK(t.q_val == 0.0);
  CHECK(t.d_val == 0.0);
  CHECK(!t.ratio.has_value());
}

TEST_CASE("quadratic coefficient at small eps") {
  // The exact drift of I / eps^2 is (d-1) eps / 2 + O(eps^2), which is just
  // above 1% at eps = 0.01 for d = 3, so the 1% check runs at eps = 0.005.
  for (int d : {2, 3}) {
    const auto sys = simplex::build_simplex_system(d);
    simplex::SimplexQuadrature quad;
    quad.nodes_per_angle = 48;
    const double e = 0.005;
    const auto t = simplex::simplex_functionals({e, sys}, quad);
    const double s = simplex::simplex_closed_form_coeffs(d).s.value();
    CHECK(std::abs(t.i_val / (e * e) - s) / s <= 1e-2);
    CHECK(std::abs(t.q_val / (e * e) - s) / s <= 1e-2);
    CHECK(std::abs(t.d_val / (e * e) - s) / s <= 1e-2);
  }
}

TEST_CASE("results are identical across worker counts") {
  const auto sys = simplex::build_simplex_system(3);
  simplex::SimplexQuadrature one{32, std::uint64_t{1} << 24, 1};
  simplex::SimplexQuadrature three{32, std::uint64_t{1} << 24, 3};
  const auto a = simplex::simplex_functionals({0.05, sys}, one);
  const auto b = simplex::simplex_functionals({0.05, sys}, three);
  CHECK(a.i_val == b.i_val);
  CHECK(a.q_val == b.q_val);
  CHECK(a.d_val == b.d_val);
}

TEST_CASE("defect is negative at eps = 0.05 for d in {2, 3, 4}") {
  for (int d : {2, 3, 4}) {
    const auto sys = simplex::build_simplex_system(d);
    simplex::SimplexQuadrature quad;
    quad.nodes_per_angle = d == 4 ? 32 : 48;
    quad.workers = 2;
    CHECK(simplex::simplex_functionals({0.05, sys}, quad).defect < 0.0);
  }
}

TEST_CASE("node budget is enforced with the offending size") {
  const auto sys = simplex::build_simplex_system(5);
  simplex::SimplexQuadrature quad;
  quad.nodes_per_angle = 32;  // 32^5 = 2^25 exceeds the default 2^24 budget
  try {
    simplex::simplex_functionals({0.01, sys}, quad);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("32^5") != std::string::npos);
  }
  quad.nodes_per_angle = 8;
  CHECK_THROWS_AS(simplex::simplex_functionals({0.01, sys}, quad), std::invalid_argument);
}

TEST_CASE("euclidean realization approaches the torus values") {
  for (int d : {2, 3}) {
    const auto sys = simplex::build_simplex_system(d);
    simplex::SimplexQuadrature quad;
    quad.nodes_per_angle = d == 2 ? 64 : 48;
    const double eps = 0.05;
    const auto torus = simplex::simplex_functionals({eps, sys}, quad);

    double prev = std::numeric_limits<double>::infinity();
    for (double radius : {5.0, 10.0, 20.0}) {
      const auto t = simplex::simplex_euclidean_functionals({eps, sys}, radius,
                                                            quad.nodes_per_angle, 8);
      const double diff = std::abs(t.i_val - torus.i_val);
      CHECK(diff < prev);
      prev = diff;
    }

    // At large R only the c_R shifts remain.
    const auto far = simplex::simplex_euclidean_functionals({eps, sys}, 1000.0,
                                                            quad.nodes_per_angle, 8);
    CHECK(std::abs(far.i_val - (torus.i_val + d * 1e-6)) <= 1e-12);
  }
  const auto sys4 = simplex::build_simplex_system(4);
  CHECK_THROWS_AS(simplex::simplex_euclidean_functionals({0.05, sys4}, 10.0, 32, 8),
                  std::invalid_argument);
}
