#include "fisherflow/simplex.hpp"

#include "fisherflow/parallel.hpp"
#include "fisherflow/transfer.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace fisherflow::simplex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

}  // namespace

int SimplexWaveSystem::root_index(int i, int j) const {
  for (int r = 0; r < root_count(); ++r) {
    if (pairs[static_cast<std::size_t>(r)] == std::make_pair(i, j)) return r;
  }
  throw std::out_of_range("SimplexWaveSystem: no root for vertex pair");
}

SimplexWaveSystem build_simplex_system(int d) {
  if (d < 2 || d > 6) {
    throw std::invalid_argument("build_simplex_system: d must be in [2, 6], got " +
                                std::to_string(d));
  }
  const int verts = d + 1;

  // Orthonormal basis of the zero-sum hyperplane: the orthogonal complement
  // of the all-ones vector, via a Householder QR.
  Eigen::MatrixXd ones(verts, 1);
  ones.setOnes();
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(ones).householderQ();
  const Eigen::MatrixXd basis = q.rightCols(d);  // verts x d

  SimplexWaveSystem sys;
  sys.d = d;
  const int n_roots = verts * (verts - 1) / 2;
  sys.roots.resize(n_roots, d);
  sys.pairs.reserve(static_cast<std::size_t>(n_roots));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < verts; ++i) {
    for (int j = i + 1; j < verts; ++j) {
      Eigen::VectorXd amb = Eigen::VectorXd::Zero(verts);
      amb[i] = inv_sqrt2;
      amb[j] = -inv_sqrt2;
      sys.roots.row(static_cast<int>(sys.pairs.size())) = (basis.transpose() * amb).transpose();
      sys.pairs.emplace_back(i, j);
    }
  }
  for (int i = 0; i < verts; ++i)
    for (int j = i + 1; j < verts; ++j)
      for (int k = j + 1; k < verts; ++k) sys.triangles.push_back({i, j, k});

  sys.gram = sys.roots * sys.roots.transpose();

  // Construction sanity: unit roots and triangle closure.
  for (int r = 0; r < n_roots; ++r) {
    if (std::abs(sys.gram(r, r) - 1.0) > 1e-14) {
      throw std::logic_error("build_simplex_system: non-unit root");
    }
  }
  for (const auto& tri : sys.triangles) {
    const Eigen::VectorXd closure = sys.roots.row(sys.root_index(tri[0], tri[1])) +
                                    sys.roots.row(sys.root_index(tri[1], tri[2])) -
                                    sys.roots.row(sys.root_index(tri[0], tri[2]));
    if (closure.norm() > 1e-14) {
      throw std::logic_error("build_simplex_system: triangle relation violated");
    }
  }
  return sys;
}

SimplexCoefficients simplex_closed_form_coeffs(int d) {
  if (d < 1) throw std::invalid_argument("simplex_closed_form_coeffs: d must be >= 1");
  const long long n = d;
  return SimplexCoefficients{
      Rational{n * (n + 1), 4},
      Rational{n * (n + 1) * (n - 1), 8},
      Rational{n * (n + 1) * (n - 1), 16},
      Rational{-n * (n + 1) * (n - 1), 32},
      Rational{-(n - 1), 8},
  };
}

namespace {

// Shared per-node evaluation state for the angle-grid quadratures.
struct NodeEvaluator {
  const SimplexWaveSystem& sys;
  double eps;
  std::vector<Eigen::VectorXd> root_vecs;
  std::vector<Eigen::MatrixXd> root_outers;
  jets::LogDensityJet jet;

  NodeEvaluator(const SimplexWaveSystem& sys_in, double eps_in)
      : sys(sys_in), eps(eps_in), jet(jets::LogDensityJet::zero(sys_in.d)) {
    for (int r = 0; r < sys.root_count(); ++r) {
      Eigen::VectorXd v = sys.roots.row(r).transpose();
      root_vecs.push_back(v);
      root_outers.push_back(v * v.transpose());
    }
  }

  // angles: one value per vertex (the gauge vertex carries 0).
  // Returns phi and fills the jet of eps * phi.
  double fill_jet(const std::vector<double>& angles) {
    double phi = 0.0;
    jet.grad.setZero();
    jet.hess.setZero();
    jet.third.set_zero();
    for (int r = 0; r < sys.root_count(); ++r) {
      const auto [vi, vj] = sys.pairs[static_cast<std::size_t>(r)];
      const double theta = angles[static_cast<std::size_t>(vi)] - angles[static_cast<std::size_t>(vj)];
      const double c = std::cos(theta);
      const double sn = std::sin(theta);
      phi += c;
      jet.grad.noalias() -= (eps * sn) * root_vecs[static_cast<std::size_t>(r)];
      jet.hess.noalias() -= (eps * c) * root_outers[static_cast<std::size_t>(r)];
      jet.third.add_rank_one(eps * sn, root_vecs[static_cast<std::size_t>(r)]);
    }
    jet.u = eps * phi;
    return phi;
  }
};

void validate_quadrature(int d, const SimplexQuadrature& quad) {
  if (quad.nodes_per_angle < 16) {
    throw std::invalid_argument("simplex quadrature: nodes_per_angle must be >= 16");
  }
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(quad.nodes_per_angle), d);
  if (total > quad.node_budget) {
    throw std::runtime_error("simplex quadrature: total grid size " +
                             std::to_string(quad.nodes_per_angle) + "^" + std::to_string(d) +
                             " = " + std::to_string(total) + " exceeds budget " +
                             std::to_string(quad.node_budget));
  }
}

}  // namespace

jets::FunctionalTriple simplex_functionals(const SimplexExpFamily& family,
                                           const SimplexQuadrature& quad) {
  const int d = family.waves.d;
  validate_quadrature(d, quad);
  const int nodes = quad.nodes_per_angle;

  std::vector<double> angle_values(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) angle_values[static_cast<std::size_t>(i)] = kTwoPi * i / nodes;

  const std::uint64_t inner_count = checked_pow(static_cast<std::uint64_t>(nodes), d - 1);

  struct RowAcc {
    double w{0}, j1w{0}, j2w{0}, j3w{0};
  };
  std::vector<RowAcc> rows(static_cast<std::size_t>(nodes));

  parallel_rows(nodes, quad.workers, [&](int row) {
    NodeEvaluator eval(family.waves, family.eps);
    std::vector<double> angles(static_cast<std::size_t>(d + 1), 0.0);
    angles[0] = angle_values[static_cast<std::size_t>(row)];
    std::vector<int> idx(static_cast<std::size_t>(d > 1 ? d - 1 : 0), 0);

    RowAcc acc;
    for (std::uint64_t count = 0; count < inner_count; ++count) {
      for (int a = 1; a < d; ++a) angles[static_cast<std::size_t>(a)] = angle_values[static_cast<std::size_t>(idx[static_cast<std::size_t>(a - 1)])];
      eval.fill_jet(angles);
      const jets::IntegrandValues iv = jets::integrands_at(eval.jet);
      const double w = std::exp(eval.jet.u);
      acc.w += w;
      acc.j1w += iv.j1 * w;
      acc.j2w += iv.j2 * w;
      acc.j3w += iv.j3 * w;
      for (std::size_t a = 0; a < idx.size(); ++a) {
        if (++idx[a] < nodes) break;
        idx[a] = 0;
      }
    }
    rows[static_cast<std::size_t>(row)] = acc;
  });

  std::vector<double> col(static_cast<std::size_t>(nodes));
  const auto reduce = [&](auto proj) {
    for (int i = 0; i < nodes; ++i) col[static_cast<std::size_t>(i)] = proj(rows[static_cast<std::size_t>(i)]);
    return pairwise_sum(col);
  };
  const double w_sum = reduce([](const RowAcc& r) { return r.w; });
  return jets::FunctionalTriple::from_iqd(reduce([](const RowAcc& r) { return r.j1w; }) / w_sum,
                                          reduce([](const RowAcc& r) { return r.j2w; }) / w_sum,
                                          reduce([](const RowAcc& r) { return r.j3w; }) / w_sum);
}

namespace {

// In-place forward DFT of one axis of a flat tensor: node index -> mode index
// in [-M, M]. Rectangle rule, normalized by the node count.
std::vector<std::complex<double>> dft_axis(const std::vector<std::complex<double>>& in,
                                           std::vector<int>& shape, int axis, int max_mode) {
  const int n = shape[static_cast<std::size_t>(axis)];
  const int side = 2 * max_mode + 1;

  std::size_t inner = 1;
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < shape.size(); ++a) {
    inner *= static_cast<std::size_t>(shape[a]);
  }
  std::size_t outer = 1;
  for (int a = 0; a < axis; ++a) outer *= static_cast<std::size_t>(shape[static_cast<std::size_t>(a)]);

  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(side) * n);
  for (int m = -max_mode; m <= max_mode; ++m)
    for (int a = 0; a < n; ++a) {
      twiddle[static_cast<std::size_t>(m + max_mode) * n + a] =
          std::polar(1.0, -kTwoPi * m * a / n);
    }

  std::vector<std::complex<double>> out(outer * static_cast<std::size_t>(side) * inner, {0.0, 0.0});
  for (std::size_t o = 0; o < outer; ++o) {
    const std::complex<double>* in_block = &in[o * static_cast<std::size_t>(n) * inner];
    std::complex<double>* out_block = &out[o * static_cast<std::size_t>(side) * inner];
    for (int m = 0; m < side; ++m) {
      const std::complex<double>* tw = &twiddle[static_cast<std::size_t>(m) * n];
      std::complex<double>* dst = &out_block[static_cast<std::size_t>(m) * inner];
      for (int a = 0; a < n; ++a) {
        const std::complex<double> w = tw[a] / static_cast<double>(n);
        const std::complex<double>* src = &in_block[static_cast<std::size_t>(a) * inner];
        for (std::size_t k = 0; k < inner; ++k) dst[k] += w * src[k];
      }
    }
  }
  shape[static_cast<std::size_t>(axis)] = side;
  return out;
}

// Full d-dimensional truncated DFT of a real field.
std::vector<std::complex<double>> dft_all(const std::vector<double>& samples, int d, int nodes,
                                          int max_mode) {
  std::vector<std::complex<double>> data(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) data[i] = samples[i];
  std::vector<int> shape(static_cast<std::size_t>(d), nodes);
  for (int axis = 0; axis < d; ++axis) data = dft_axis(data, shape, axis, max_mode);
  return data;
}

double shell_contract(const std::vector<std::complex<double>>& coeffs, int d, int max_mode,
                      const Eigen::MatrixXd& mode_gram, double radius) {
  const int side = 2 * max_mode + 1;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Eigen::VectorXd mode(d);
  double total = 0.0;
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    for (int a = 0; a < d; ++a) mode[a] = idx[static_cast<std::size_t>(a)] - max_mode;
    const double freq_sq = mode.dot(mode_gram * mode);
    const double log_w = -0.5 * radius * radius * freq_sq;
    if (log_w >= -700.0) total += coeffs[flat].real() * std::exp(log_w);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < side) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return total;
}

}  // namespace

jets::FunctionalTriple simplex_euclidean_functionals(const SimplexExpFamily& family, double radius,
                                                     int nodes_per_angle, int max_mode) {
  const int d = family.waves.d;
  if (d > 3) {
    throw std::invalid_argument(
        "simplex_euclidean_functionals: enabled for d <= 3 only (shell enumeration grows with the "
        "root count)");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("simplex_euclidean_functionals: radius > 0");
  if (max_mode >= nodes_per_angle / 2) {
    throw std::invalid_argument("simplex_euclidean_functionals: max_mode too large for grid");
  }
  SimplexQuadrature quad;
  quad.nodes_per_angle = nodes_per_angle;
  validate_quadrature(d, quad);

  const int nodes = nodes_per_angle;
  const double eps = family.eps;
  const std::uint64_t total_nodes = checked_pow(static_cast<std::uint64_t>(nodes), d);

  // Sampled fields: phi, |hess phi|^2, |third phi|^2, tr((hess phi)^3), weight.
  std::vector<double> phi_s(total_nodes), hess_s(total_nodes), third_s(total_nodes),
      tr3_s(total_nodes), w_s(total_nodes);
  {
    NodeEvaluator eval(family.waves, 1.0);  // unscaled phi jet
    std::vector<double> angles(static_cast<std::size_t>(d + 1), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::uint64_t flat = 0; flat < total_nodes; ++flat) {
      for (int a = 0; a < d; ++a) angles[static_cast<std::size_t>(a)] = kTwoPi * idx[static_cast<std::size_t>(a)] / nodes;
      const double phi = eval.fill_jet(angles);
      phi_s[flat] = phi;
      hess_s[flat] = eval.jet.hess.squaredNorm();
      third_s[flat] = eval.jet.third.squared_norm();
      double tr3 = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double hij2 = 0.0;
          for (int k = 0; k < d; ++k) hij2 += eval.jet.hess(i, k) * eval.jet.hess(k, j);
          tr3 += hij2 * eval.jet.hess(j, i);
        }
      tr3_s[flat] = tr3;
      w_s[flat] = std::exp(eps * phi);
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] < nodes) break;
        idx[static_cast<std::size_t>(a)] = 0;
      }
    }
  }

  // Mode gram for the gauge basis roots k_{a, d}: exponent of mode m is
  // |sum_a m_a k_{a,d}|^2 = m . G m.
  Eigen::MatrixXd mode_gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      mode_gram(a, b) =
          family.waves.gram(family.waves.root_index(a, d), family.waves.root_index(b, d));
    }

  const auto den = dft_all(w_s, d, nodes, max_mode);
  const double den_value = shell_contract(den, d, max_mode, mode_gram, radius);
  if (!(den_value > 0.0)) {
    throw std::runtime_error("simplex_euclidean_functionals: non-positive normalization");
  }
  const auto expectation = [&](const std::vector<double>& field) {
    std::vector<double> fw(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) fw[i] = field[i] * w_s[i];
    const auto num = dft_all(fw, d, nodes, max_mode);
    return shell_contract(num, d, max_mode, mode_gram, radius) / den_value;
  };

  const double e_phi = expectation(phi_s);
  const double e_hess = expectation(hess_s);
  const double e_third = expectation(third_s);
  const double e_tr3 = expectation(tr3_s);

  const double c = 1.0 / (radius * radius);
  const double dd = static_cast<double>(d);
  const double i_val = eps * e_phi + dd * c;
  const double q_val = eps * eps * e_hess + 2.0 * eps * c * e_phi + dd * c * c;
  const double d0 = eps * eps * e_third - 2.0 * eps * eps * eps * e_tr3;
  const double d_val = d0 + 6.0 * eps * eps * c * e_hess + 6.0 * eps * c * c * e_phi +
                       2.0 * dd * c * c * c;
  return jets::FunctionalTriple::from_iqd(i_val, q_val, d_val);
}

}  // namespace fisherflow::simplex
