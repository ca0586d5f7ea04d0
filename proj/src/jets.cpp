#include "fisherflow/jets.hpp"

#include <cmath>

namespace fisherflow::jets {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > 8) {
    throw std::invalid_argument("SymTensor3: dim must be in [1, 8], got " + std::to_string(dim));
  }
}

}  // namespace

SymTensor3::SymTensor3(int dim) : dim_(dim) {
  check_dim(dim);
  data_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

SymTensor3 SymTensor3::symmetrized(int dim, std::span<const double> dense) {
  check_dim(dim);
  if (dense.size() != static_cast<std::size_t>(dim) * dim * dim) {
    throw std::invalid_argument("SymTensor3::symmetrized: wrong element count");
  }
  SymTensor3 out(dim);
  const auto at = [&](int i, int j, int k) {
    return dense[static_cast<std::size_t>((i * dim + j) * dim + k)];
  };
  // One averaged representative per unordered triple, assigned to all slots.
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k) {
        const double avg = (at(i, j, k) + at(i, k, j) + at(j, i, k) + at(j, k, i) + at(k, i, j) +
                            at(k, j, i)) /
                           6.0;
        out.set(i, j, k, avg);
      }
  return out;
}

void SymTensor3::set(int i, int j, int k, double value) {
  const auto put = [&](int a, int b, int c) {
    data_[static_cast<std::size_t>((a * dim_ + b) * dim_ + c)] = value;
  };
  put(i, j, k);
  put(i, k, j);
  put(j, i, k);
  put(j, k, i);
  put(k, i, j);
  put(k, j, i);
}

void SymTensor3::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

void SymTensor3::scale(double c) {
  for (double& v : data_) v *= c;
}

void SymTensor3::add_rank_one(double w, const Eigen::VectorXd& v) {
  if (v.size() != dim_) throw std::invalid_argument("SymTensor3::add_rank_one: size mismatch");
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    const double wi = w * v[i];
    for (int j = 0; j < dim_; ++j) {
      const double wij = wi * v[j];
      for (int k = 0; k < dim_; ++k) data_[idx++] += wij * v[k];
    }
  }
}

void SymTensor3::add_sym_outer(double w, const Eigen::MatrixXd& a, const Eigen::VectorXd& v) {
  if (a.rows() != dim_ || a.cols() != dim_ || v.size() != dim_) {
    throw std::invalid_argument("SymTensor3::add_sym_outer: size mismatch");
  }
  const double third = w / 3.0;
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        data_[idx++] += third * (a(i, j) * v[k] + a(i, k) * v[j] + a(j, k) * v[i]);
      }
}

double SymTensor3::squared_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

bool SymTensor3::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool SymTensor3::is_symmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const double v = (*this)(i, j, k);
        if (v != (*this)(i, k, j) || v != (*this)(j, i, k) || v != (*this)(j, k, i) ||
            v != (*this)(k, i, j) || v != (*this)(k, j, i)) {
          return false;
        }
      }
  return true;
}

LogDensityJet LogDensityJet::zero(int dim) {
  return LogDensityJet{dim, 0.0, Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim),
                       SymTensor3(dim)};
}

FunctionalTriple FunctionalTriple::from_iqd(double i, double q, double d) {
  FunctionalTriple t;
  t.i_val = i;
  t.q_val = q;
  t.d_val = d;
  t.defect = i * d - q * q;
  if (q > 0.0) t.ratio = i * d / (q * q);
  return t;
}

IntegrandValues integrands_at(const LogDensityJet& jet) {
  const int n = jet.dim;
  if (jet.grad.size() != n || jet.hess.rows() != n || jet.hess.cols() != n ||
      jet.third.dim() != n) {
    throw std::invalid_argument("integrands_at: jet dimensions inconsistent");
  }
  if (!jet.grad.allFinite() || !jet.hess.allFinite() || !jet.third.all_finite()) {
    throw std::invalid_argument("integrands_at: non-finite jet entries");
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (jet.hess(i, j) != jet.hess(j, i)) {
        throw std::invalid_argument("integrands_at: hess is not symmetric");
      }
    }

  IntegrandValues out;
  out.j1 = -jet.hess.trace();
  out.j2 = jet.hess.squaredNorm();

  // tr(hess^3) without temporaries; H = -hess flips its sign.
  double tr3 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double hij2 = 0.0;
      for (int k = 0; k < n; ++k) hij2 += jet.hess(i, k) * jet.hess(k, j);
      tr3 += hij2 * jet.hess(j, i);
    }
  out.j3 = jet.third.squared_norm() - 2.0 * tr3;
  return out;
}

LogDensityJet jet_of_log_from_density_jet(double f, const Eigen::VectorXd& grad_f,
                                          const Eigen::MatrixXd& hess_f, const SymTensor3& third_f,
                                          const std::string& where) {
  if (!(f > kPositivityThreshold)) throw PositivityError(f, where);
  const int n = static_cast<int>(grad_f.size());
  if (hess_f.rows() != n || hess_f.cols() != n || third_f.dim() != n) {
    throw std::invalid_argument("jet_of_log_from_density_jet: size mismatch");
  }

  const double inv = 1.0 / f;

  // Each input tensor is scaled by 1/f before any product is formed, so the
  // conversion stays representable down to the positivity threshold even
  // though 1/f^3 itself can overflow.
  LogDensityJet jet = LogDensityJet::zero(n);
  jet.u = std::log(f);
  jet.grad = grad_f * inv;
  const Eigen::MatrixXd hess_scaled = hess_f * inv;
  jet.hess = hess_scaled;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jet.hess(i, j) -= jet.grad[i] * jet.grad[j];

  jet.third = third_f;
  jet.third.scale(inv);
  jet.third.add_sym_outer(-3.0, hess_scaled, jet.grad);
  jet.third.add_rank_one(2.0, jet.grad);
  return jet;
}

}  // namespace fisherflow::jets
