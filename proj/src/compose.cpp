#include "fisherflow/compose.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fisherflow::compose {

jets::FunctionalTriple product_triple(const jets::FunctionalTriple& a,
                                      const jets::FunctionalTriple& b) {
  if (!std::isfinite(a.i_val) || !std::isfinite(a.q_val) || !std::isfinite(a.d_val) ||
      !std::isfinite(b.i_val) || !std::isfinite(b.q_val) || !std::isfinite(b.d_val)) {
    throw std::invalid_argument("product_triple: non-finite inputs");
  }
  return jets::FunctionalTriple::from_iqd(a.i_val + b.i_val, a.q_val + b.q_val,
                                          a.d_val + b.d_val);
}

jets::FunctionalTriple gaussian_block(int dim, double sigma) {
  if (dim < 1) throw std::invalid_argument("gaussian_block: dim must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_block: sigma must be positive");
  const double s2 = 1.0 / (sigma * sigma);
  const double n = static_cast<double>(dim);
  return jets::FunctionalTriple::from_iqd(n * s2, n * s2 * s2, 2.0 * n * s2 * s2 * s2);
}

jets::FunctionalTriple rescale_triple(const jets::FunctionalTriple& t, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("rescale_triple: r must be positive");
  const double s2 = 1.0 / (r * r);
  const double s4 = s2 * s2;
  const double s6 = s4 * s2;
  jets::FunctionalTriple out = jets::FunctionalTriple::from_iqd(t.i_val * s2, t.q_val * s4,
                                                                t.d_val * s6);
  out.ratio = t.ratio;  // exact algebraic invariance
  return out;
}

double Gaussian1D::value(double x) const {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

void Gaussian1D::density_jet(double x, double& f, double& f1, double& f2, double& f3) const {
  const double z = (x - mean) / sigma;
  const double inv = 1.0 / sigma;
  f = value(x);
  f1 = -z * inv * f;
  f2 = (z * z - 1.0) * inv * inv * f;
  f3 = (3.0 * z - z * z * z) * inv * inv * inv * f;
}

namespace {

struct Window {
  double lo, hi;
};

// Union of the two component windows; merged when they overlap.
std::vector<Window> quadrature_windows(const MixtureSpec& spec, const MixtureQuadrature& quad) {
  const Window background{-quad.background_halfwidth, quad.background_halfwidth};
  const double bump_half = quad.bump_halfwidth * spec.r * spec.bump.sigma;
  const Window bump{spec.separation - bump_half, spec.separation + bump_half};
  if (bump.lo > background.hi || background.lo > bump.hi) return {background, bump};
  return {{std::min(background.lo, bump.lo), std::max(background.hi, bump.hi)}};
}

}  // namespace

jets::FunctionalTriple mixture_functionals(const MixtureSpec& spec, const MixtureQuadrature& quad) {
  if (!(spec.eta > 0.0) || !(spec.eta < 1.0)) {
    throw std::invalid_argument("mixture_functionals: eta must lie in (0, 1)");
  }
  if (!(spec.r > 0.0) || !(spec.separation > 0.0)) {
    throw std::invalid_argument("mixture_functionals: r and separation must be positive");
  }
  if (quad.nodes < 16) throw std::invalid_argument("mixture_functionals: too few nodes");

  // Rescaled, shifted bump: r^-1 bump((x - L) / r) is itself Gaussian.
  Gaussian1D shifted = spec.bump;
  shifted.sigma = spec.bump.sigma * spec.r;
  shifted.mean = spec.separation + spec.bump.mean * spec.r;

  const auto windows = quadrature_windows(spec, quad);
  const int nodes_per_window = windows.size() == 1 ? 2 * quad.nodes : quad.nodes;

  double mass = 0.0, j1f = 0.0, j2f = 0.0, j3f = 0.0;
  Eigen::VectorXd grad_f(1);
  Eigen::MatrixXd hess_f(1, 1);
  jets::SymTensor3 third_f(1);
  for (const Window& win : windows) {
    const double h = (win.hi - win.lo) / nodes_per_window;
    for (int i = 0; i < nodes_per_window; ++i) {
      const double x = win.lo + (i + 0.5) * h;
      double fb, fb1, fb2, fb3, fg, fg1, fg2, fg3;
      spec.background.density_jet(x, fb, fb1, fb2, fb3);
      shifted.density_jet(x, fg, fg1, fg2, fg3);
      const double a = 1.0 - spec.eta;
      const double f = a * fb + spec.eta * fg;
      grad_f[0] = a * fb1 + spec.eta * fg1;
      hess_f(0, 0) = a * fb2 + spec.eta * fg2;
      third_f.set(0, 0, 0, a * fb3 + spec.eta * fg3);
      const jets::LogDensityJet jet = jets::jet_of_log_from_density_jet(
          f, grad_f, hess_f, third_f, "x = " + std::to_string(x));
      const jets::IntegrandValues iv = jets::integrands_at(jet);
      mass += f * h;
      j1f += iv.j1 * f * h;
      j2f += iv.j2 * f * h;
      j3f += iv.j3 * f * h;
    }
  }
  return jets::FunctionalTriple::from_iqd(j1f / mass, j2f / mass, j3f / mass);
}

jets::FunctionalTriple mixture_additivity_prediction(const MixtureSpec& spec) {
  const jets::FunctionalTriple background =
      gaussian_block(1, spec.background.sigma);
  const jets::FunctionalTriple bump =
      rescale_triple(gaussian_block(1, spec.bump.sigma), spec.r);
  const double a = 1.0 - spec.eta;
  return jets::FunctionalTriple::from_iqd(a * background.i_val + spec.eta * bump.i_val,
                                          a * background.q_val + spec.eta * bump.q_val,
                                          a * background.d_val + spec.eta * bump.d_val);
}

MixtureSpec dichotomy_spec(const Gaussian1D& bump, double r, double separation) {
  MixtureSpec spec;
  spec.bump = bump;
  spec.r = r;
  spec.eta = r * r * r;
  spec.separation = separation;
  return spec;
}

double flattening_sigma(const jets::FunctionalTriple& t, double rel_tol, double sigma0) {
  if (!t.ratio.has_value()) {
    throw std::invalid_argument("flattening_sigma: input ratio undefined");
  }
  const double target = *t.ratio;
  double sigma = sigma0;
  for (int iter = 0; iter < 64; ++iter) {
    const jets::FunctionalTriple prod = product_triple(t, gaussian_block(1, sigma));
    if (prod.ratio.has_value() && std::abs(*prod.ratio - target) <= rel_tol * std::abs(target)) {
      return sigma;
    }
    sigma *= 2.0;
  }
  throw std::runtime_error("flattening_sigma: no flattening sigma found by doubling");
}

}  // namespace fisherflow::compose
