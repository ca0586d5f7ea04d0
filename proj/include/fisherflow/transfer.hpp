#pragma once

#include "fisherflow/torus2d.hpp"

#include <complex>
#include <limits>
#include <vector>

namespace fisherflow::transfer {

/// Gaussian-envelope family exp(eps * phi(x) - |x|^2 / (2 R^2)), normalized.
struct EnvelopeFamily {
  double eps{0};
  double radius{1};
  double c_r{1};  // R^{-2}, cached

  EnvelopeFamily(double eps_in, double radius_in);
};

/// Discrete Fourier coefficients on [-M, M]^2 with an optional table of
/// Gaussian shell weights exp(-R^2 (m^2 + n^2 - mn) / 2).
class FourierTable {
 public:
  explicit FourierTable(int max_mode);

  int max_mode() const { return max_mode_; }

  std::complex<double>& at(int m, int n) { return coeffs_[index(m, n)]; }
  std::complex<double> at(int m, int n) const { return coeffs_[index(m, n)]; }

  void attach_shell(double radius);
  bool has_shell() const { return !shell_.empty(); }
  double shell(int m, int n) const;
  double radius() const { return radius_; }

  /// Real part of sum_{m,n} coeffs(m,n) * shell(m,n); the imaginary parts
  /// cancel for real fields.
  double shell_contraction() const;

 private:
  std::size_t index(int m, int n) const;
  int max_mode_;
  std::vector<std::complex<double>> coeffs_;
  std::vector<double> shell_;
  double radius_ = std::numeric_limits<double>::infinity();
};

/// Shell weight exp(-R^2 (m^2 + n^2 - mn) / 2), evaluated in log space and
/// flushed to exact zero below exp(-700).
double shell_weight(int m, int n, double radius);

/// Rectangle-rule Fourier coefficients of a grid-sampled field; exact for
/// trigonometric polynomials of degree <= max_mode resolved by the grid.
/// Requires max_mode < min(n_s, n_t) / 2.
FourierTable fourier_coefficients(std::span<const double> samples,
                                  const torus2d::PeriodicGrid& grid, int max_mode);

/// E_R[G]: the Gaussian-envelope weighted average of a periodic field G under
/// weight exp(eps * phi), computed through Fourier shells.
double gaussian_weighted_average(std::span<const double> g_samples, double eps, double radius,
                                 const torus2d::PeriodicGrid& grid, int max_mode);

/// The five E_R inputs entering the closed-form expansions.
struct EnvelopeAverages {
  double phi;       // E_R[phi]
  double hess_sq;   // E_R[|hess phi|^2]
  double third_sq;  // E_R[|third phi|^2]
  double tr_hess3;  // E_R[tr((hess phi)^3)]
};

EnvelopeAverages envelope_averages(const EnvelopeFamily& family, const torus2d::PeriodicGrid& grid,
                                   int max_mode);

/// Exact triple for the envelope family via the shell formula:
///   I = E_R[eps phi] + 2 c_R,
///   Q = E_R[eps^2 |hess phi|^2] + 2 eps c_R E_R[phi] + 2 c_R^2,
///   D = E_R[D0] + 6 eps^2 c_R E_R[|hess phi|^2] + 6 eps c_R^2 E_R[phi] + 4 c_R^3,
/// with D0 = eps^2 |third phi|^2 - 2 eps^3 tr((hess phi)^3).
jets::FunctionalTriple euclidean_functionals(const EnvelopeFamily& family,
                                             const torus2d::PeriodicGrid& grid, int max_mode);

}  // namespace fisherflow::transfer
