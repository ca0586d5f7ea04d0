#pragma once

#include "fisherflow/jets.hpp"
#include "fisherflow/rational.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace fisherflow::simplex {

/// Unit wave vectors k_ij = (e_i - e_j) / sqrt(2) of the d-dimensional
/// simplex resonance family, expressed in an orthonormal basis of the
/// zero-sum hyperplane. Angles obey k_ij . x = theta_i - theta_j.
struct SimplexWaveSystem {
  int d{0};
  Eigen::MatrixXd roots;                      // N_d x d, one root per row
  std::vector<std::pair<int, int>> pairs;     // root r <-> vertex pair (i, j), i < j, 0-based
  std::vector<std::array<int, 3>> triangles;  // vertex triples (i < j < k)
  Eigen::MatrixXd gram;                       // N_d x N_d pairwise dot products

  int root_count() const { return static_cast<int>(pairs.size()); }
  int root_index(int i, int j) const;
};

/// Builds the system for 2 <= d <= 6.
SimplexWaveSystem build_simplex_system(int d);

struct SimplexExpFamily {
  double eps{0};
  SimplexWaveSystem waves;
};

struct SimplexQuadrature {
  int nodes_per_angle{48};
  std::uint64_t node_budget{std::uint64_t{1} << 24};
  int workers{1};
};

/// Triple on the d-fold angle grid with the last angle gauge-fixed to zero
/// (valid because every integrand depends only on angle differences).
jets::FunctionalTriple simplex_functionals(const SimplexExpFamily& family,
                                           const SimplexQuadrature& quad);

/// The closed-form expansion constants as exact fractions:
///   s = d(d+1)/4, alpha = d(d+1)(d-1)/8, gamma = d(d+1)(d-1)/16,
///   delta = -d(d+1)(d-1)/32, slope = -(d-1)/8.
struct SimplexCoefficients {
  Rational s;
  Rational alpha;
  Rational gamma;
  Rational delta;
  Rational slope;
};

SimplexCoefficients simplex_closed_form_coeffs(int d);  // d >= 1

/// Gaussian-envelope realization on the hyperplane (enabled for d <= 3);
/// shell exponents come from the gram table of the gauge basis roots.
jets::FunctionalTriple simplex_euclidean_functionals(const SimplexExpFamily& family, double radius,
                                                     int nodes_per_angle, int max_mode);

}  // namespace fisherflow::simplex
