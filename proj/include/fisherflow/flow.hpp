#pragma once

#include "fisherflow/transfer.hpp"

#include <iosfwd>

namespace fisherflow::flow {

/// Fourier coefficients of the torus density f (not log f) at one time.
/// coeffs(0, 0) = 1: the density has unit Haar mass.
struct SpectralDensity {
  transfer::FourierTable coeffs;
  double time{0};
};

/// Coefficients of f_eps at t = 0, normalized to unit mass.
SpectralDensity spectral_density(const torus2d::TorusExpFamily& family,
                                 const torus2d::PeriodicGrid& grid, int max_mode);

/// Heat evolution: mode (m, n) is damped by exp(-t (m^2 + n^2 - mn) / 2).
/// Positivity of the reconstructed density is checked on the grid.
SpectralDensity evolve(const torus2d::TorusExpFamily& family, double t,
                       const torus2d::PeriodicGrid& grid, int max_mode);

/// Further evolution of an existing spectral state (semigroup composition).
SpectralDensity evolve_further(const SpectralDensity& sd, double dt,
                               const torus2d::PeriodicGrid& grid);

/// Grid samples of the reconstructed density.
std::vector<double> reconstruct_density(const SpectralDensity& sd,
                                        const torus2d::PeriodicGrid& grid);

/// Triple of f_t via spectral differentiation of f and the log-jet
/// conversion; equals the static torus functionals at t = 0.
jets::FunctionalTriple functionals_at_time(const SpectralDensity& sd,
                                           const torus2d::PeriodicGrid& grid, int workers = 1);

struct IdentityResidualRow {
  double t{0};
  double iprime_residual{0};        // |central dI/dt + Q| at dt
  double isecond_residual{0};       // |central d2I/dt2 - D| at dt
  double iprime_residual_half{0};   // same at dt/2
  double isecond_residual_half{0};
  double iprime_order_ratio{0};     // residual(dt) / residual(dt/2), ~4
  double isecond_order_ratio{0};
};

struct IdentityReport {
  double dt{0};
  std::vector<IdentityResidualRow> rows;
  double max_iprime_residual{0};
  double max_isecond_residual{0};
};

/// Central-difference verification of dI/dt = -Q and d2I/dt2 = D.
IdentityReport verify_identities(const torus2d::TorusExpFamily& family,
                                 std::span<const double> times, double dt,
                                 const torus2d::PeriodicGrid& grid, int max_mode,
                                 int workers = 1);

struct FlowProfile {
  std::vector<double> times;
  std::vector<jets::FunctionalTriple> triples;
  std::vector<double> phi_defect;  // I*D - Q^2 per time
};

FlowProfile flow_profile(const torus2d::TorusExpFamily& family, std::span<const double> times,
                         const torus2d::PeriodicGrid& grid, int max_mode, int workers = 1);

/// CSV columns: t, I, Q, D, defect, ratio.
void write_csv(const FlowProfile& profile, std::ostream& os);

}  // namespace fisherflow::flow
