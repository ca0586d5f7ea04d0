#pragma once

#include "fisherflow/jets.hpp"

#include <span>
#include <vector>

namespace fisherflow::torus2d {

/// The resonant unit triad k1 + k2 + k3 = 0 with pairwise dot products -1/2.
struct TriadWaveSystem {
  Eigen::Vector2d k1;
  Eigen::Vector2d k2;
  Eigen::Vector2d k3;
  Eigen::Matrix3d gram;

  static TriadWaveSystem standard();
};

/// f_eps = Z^-1 exp(eps * phi) on the triangular torus.
struct TorusExpFamily {
  double eps{0};
  TriadWaveSystem waves = TriadWaveSystem::standard();
};

/// f_eps = Z^-1 exp(eps * cos x) on the circle.
struct CircleExpFamily {
  double eps{0};
};

/// Uniform tensor grid in angle coordinates on [0, 2pi)^2, or [0, 2pi) for
/// the circle. Node counts must be even and at least 4.
class PeriodicGrid {
 public:
  static PeriodicGrid square(int n);
  static PeriodicGrid rect(int n_s, int n_t);
  static PeriodicGrid circle(int n);

  int n_s() const { return n_s_; }
  int n_t() const { return n_t_; }
  bool is_circle() const { return n_t_ == 0; }
  std::size_t node_count() const;

  double node_s(int i) const;
  double node_t(int j) const;

 private:
  PeriodicGrid(int n_s, int n_t);
  int n_s_;
  int n_t_;  // 0 for the circle
};

/// phi and its first three derivative tensors in ambient coordinates,
/// evaluated at angles (s, t) via theta1 = s, theta2 = t, theta3 = -(s + t).
struct PhiJet {
  double phi;
  Eigen::Vector2d grad;
  Eigen::Matrix2d hess;
  jets::SymTensor3 third;
};

PhiJet phi_jet_at(const TriadWaveSystem& waves, double s, double t);

/// Scalar invariants of the phi jet entering the weighted averages.
struct PhiFields {
  double phi;
  double grad_sq;   // |grad phi|^2
  double hess_sq;   // |hess phi|^2 (Frobenius)
  double third_sq;  // |third phi|^2
  double tr_hess3;  // tr((hess phi)^3)
};

PhiFields phi_fields_at(const TriadWaveSystem& waves, double s, double t);

/// Normalized mean over all grid nodes (rectangle rule; spectrally accurate
/// for smooth periodic integrands). Rejects non-finite samples.
double haar_average(std::span<const double> samples, const PeriodicGrid& grid);

/// The nine closed-form averages of the hexagonal model.
struct HexagonalAverages {
  double grad_sq;       // 3/2
  double phi_grad_sq;   // 3/4
  double hess_sq;       // 3/2
  double phi_hess_sq;   // 3/8
  double third_sq;      // 3/2
  double phi_third_sq;  // 3/16
  double tr_hess3;      // 3/16
  double phi_sq;        // 3/2
  double phi_cubed;     // 3/2
};

HexagonalAverages hexagonal_average_table(const PeriodicGrid& grid);

/// Exact weighted-average triple of the torus family at this eps (no series
/// truncation). Weighted averages are formed as ratios of plain averages.
jets::FunctionalTriple torus_functionals(const TorusExpFamily& family, const PeriodicGrid& grid,
                                         int workers = 1);

jets::FunctionalTriple circle_functionals(const CircleExpFamily& family, const PeriodicGrid& grid);

}  // namespace fisherflow::torus2d
