#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisherflow::jets {

/// Densities below this value are treated as genuine underflow, not a model
/// property; all in-scope densities stay far above it on their quadrature
/// domains.
inline constexpr double kPositivityThreshold = 1e-300;

class PositivityError : public std::runtime_error {
 public:
  PositivityError(double value, const std::string& where)
      : std::runtime_error("density not positive (f = " + std::to_string(value) + ")" +
                           (where.empty() ? "" : " at " + where)),
        value_(value) {}
  double value() const { return value_; }

 private:
  double value_;
};

/// Dense fully symmetric rank-3 tensor for small dimensions (dim <= 8).
/// Every mutator writes a tensor that is symmetric by construction, so the
/// stored dim^3 block always carries a single symmetric representative.
class SymTensor3 {
 public:
  explicit SymTensor3(int dim);

  /// Builds the symmetric part of arbitrary dense row-major data (dim^3 values).
  static SymTensor3 symmetrized(int dim, std::span<const double> dense);

  int dim() const { return dim_; }

  double operator()(int i, int j, int k) const {
    return data_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
  }

  /// Assigns all six permutations of (i, j, k).
  void set(int i, int j, int k, double value);

  void set_zero();
  void scale(double c);

  /// += w * v ⊗ v ⊗ v
  void add_rank_one(double w, const Eigen::VectorXd& v);

  /// += w * Sym(a ⊗ v), with Sym the full symmetrization
  /// Sym(a ⊗ v)_{ijk} = (a_ij v_k + a_ik v_j + a_jk v_i) / 3.
  void add_sym_outer(double w, const Eigen::MatrixXd& a, const Eigen::VectorXd& v);

  double squared_norm() const;
  bool all_finite() const;
  bool is_symmetric() const;

  std::span<const double> data() const { return data_; }

 private:
  int dim_;
  std::vector<double> data_;
};

/// Value, gradient, Hessian, and symmetric third-derivative tensor of
/// log f at a point; the logarithmic Hessian is -hess.
struct LogDensityJet {
  int dim;
  double u;               // log f, used only for weights
  Eigen::VectorXd grad;   // grad(log f)
  Eigen::MatrixXd hess;   // hess(log f), symmetric
  SymTensor3 third;       // third derivative tensor of log f

  static LogDensityJet zero(int dim);
};

/// Pointwise integrands of the three functionals:
///   j1 = tr(H),  j2 = tr(H^2),  j3 = |grad H|^2 + 2 tr(H^3),  H = -hess.
struct IntegrandValues {
  double j1{0};
  double j2{0};
  double j3{0};
};

/// The three functionals of one density plus the derived defect and ratio.
struct FunctionalTriple {
  double i_val{0};
  double q_val{0};
  double d_val{0};
  double defect{0};              // i_val * d_val - q_val^2
  std::optional<double> ratio;   // i_val * d_val / q_val^2, defined iff q_val > 0

  static FunctionalTriple from_iqd(double i, double q, double d);
};

IntegrandValues integrands_at(const LogDensityJet& jet);

/// Converts the analytic jet of a density f into the jet of log f:
///   grad u = grad f / f,
///   hess u = hess f / f - (grad f)(grad f)^T / f^2,
///   third u = third f / f - 3 Sym(hess f ⊗ grad f) / f^2 + 2 (grad f)^⊗3 / f^3.
/// `where` labels the evaluation point in positivity errors.
LogDensityJet jet_of_log_from_density_jet(double f, const Eigen::VectorXd& grad_f,
                                          const Eigen::MatrixXd& hess_f, const SymTensor3& third_f,
                                          const std::string& where = {});

}  // namespace fisherflow::jets
