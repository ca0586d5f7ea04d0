#pragma once

#include "fisherflow/jets.hpp"

namespace fisherflow::compose {

struct GaussianBlockSpec {
  int dim{1};
  double sigma{1};
};

/// Componentwise sums (block-diagonal logarithmic Hessian of a product
/// density); defect and ratio recomputed.
jets::FunctionalTriple product_triple(const jets::FunctionalTriple& a,
                                      const jets::FunctionalTriple& b);

/// Closed-form triple of a centered Gaussian block:
///   (dim sigma^-2, dim sigma^-4, 2 dim sigma^-6), ratio = 2.
jets::FunctionalTriple gaussian_block(int dim, double sigma);

/// Dilation scaling laws: (r^-2 I, r^-4 Q, r^-6 D). The ratio is carried
/// over unchanged (the exponents cancel exactly); the defect is recomputed
/// from the scaled components.
jets::FunctionalTriple rescale_triple(const jets::FunctionalTriple& t, double r);

/// Normalized 1-D Gaussian density model with analytic derivatives.
struct Gaussian1D {
  double mean{0};
  double sigma{1};

  double value(double x) const;
  /// Density derivatives up to third order at x.
  void density_jet(double x, double& f, double& f1, double& f2, double& f3) const;
};

/// (1 - eta) * background + eta * bump_r(. - separation), with
/// bump_r(x) = r^-1 bump(x / r).
struct MixtureSpec {
  Gaussian1D background{};  // standard Gaussian
  Gaussian1D bump{};
  double r{1};
  double eta{0.5};
  double separation{10};
};

/// Midpoint quadrature over the union of the component windows; the windows
/// are merged when they overlap.
struct MixtureQuadrature {
  int nodes{4096};                 // per window
  double background_halfwidth{10};
  double bump_halfwidth{10};       // in units of r
};

jets::FunctionalTriple mixture_functionals(const MixtureSpec& spec, const MixtureQuadrature& quad);

/// Additivity prediction (1-eta) triple(background) + eta triple(bump_r).
jets::FunctionalTriple mixture_additivity_prediction(const MixtureSpec& spec);

/// Dichotomy-schedule preset eta = r^3.
MixtureSpec dichotomy_spec(const Gaussian1D& bump, double r, double separation);

/// Doubles sigma from sigma0 until adjoining a 1-D Gaussian block moves the
/// ratio by at most rel_tol * |ratio|; returns that sigma.
double flattening_sigma(const jets::FunctionalTriple& t, double rel_tol = 1e-3,
                        double sigma0 = 1.0);

}  // namespace fisherflow::compose
