#include "fisherflow/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace fisherflow::asymptotics {

TorusClosedForm closed_form_torus() { return TorusClosedForm{}; }

std::array<ExpansionRecord, 3> TorusClosedForm::records() const {
  ExpansionRecord i_rec{"torus:i", a2.value(), a3.value(), false, {}, 0.0};
  ExpansionRecord q_rec{"torus:q", q2.value(), q3.value(), false, {}, 0.0};
  ExpansionRecord d_rec{"torus:d", d2.value(), d3.value(), false, {}, 0.0};
  return {i_rec, q_rec, d_rec};
}

namespace {

void validate_window(std::span<const double> eps_set) {
  if (eps_set.size() < 3) {
    throw std::invalid_argument("fit window needs at least 3 eps values");
  }
  std::set<double> distinct(eps_set.begin(), eps_set.end());
  if (distinct.size() != eps_set.size()) {
    throw std::invalid_argument("fit window has repeated eps values");
  }
  for (double e : eps_set) {
    if (!(e > 0.0) || e > 0.1) {
      throw std::invalid_argument("fit window eps values must lie in (0, 0.1]");
    }
  }
}

}  // namespace

SeriesFit fit_series(const ScalarEvaluator& value_at, int lead_power,
                     std::span<const double> eps_set) {
  if (lead_power < 1) throw std::invalid_argument("fit_series: lead power must be >= 1");
  validate_window(eps_set);

  const int rows = static_cast<int>(eps_set.size());
  Eigen::MatrixXd design(rows, 3);
  Eigen::VectorXd rhs(rows);
  for (int r = 0; r < rows; ++r) {
    const double e = eps_set[static_cast<std::size_t>(r)];
    design(r, 0) = std::pow(e, lead_power);
    design(r, 1) = std::pow(e, lead_power + 1);
    design(r, 2) = std::pow(e, lead_power + 2);
    rhs(r) = value_at(e);
  }

  // Column equilibration keeps the conditioning estimate honest for the
  // wildly different scales of consecutive powers.
  Eigen::Vector3d scale;
  for (int c = 0; c < 3; ++c) {
    const double norm = design.col(c).norm();
    scale(c) = norm > 0.0 ? 1.0 / norm : 1.0;
  }
  Eigen::MatrixXd scaled = design * scale.asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < 1e8)) {
    throw std::runtime_error(
        "fit_series: ill-conditioned window (condition number " + std::to_string(cond) +
        "); choose a wider spread of eps values");
  }

  const Eigen::Vector3d solved = scale.asDiagonal() * svd.solve(rhs);
  const Eigen::VectorXd residuals = design * solved - rhs;

  SeriesFit fit;
  fit.lead_power = lead_power;
  fit.c_lead = solved(0);
  fit.c_next = solved(1);
  fit.c_nuisance = solved(2);
  fit.residual = residuals.cwiseAbs().maxCoeff();
  fit.cond = cond;
  fit.window.assign(eps_set.begin(), eps_set.end());
  return fit;
}

FittedExpansions fit_coefficients(const TripleEvaluator& evaluator,
                                  std::span<const double> eps_set, const std::string& family) {
  validate_window(eps_set);

  // One evaluation per eps, shared by the three fits.
  std::vector<double> iv, qv, dv;
  iv.reserve(eps_set.size());
  qv.reserve(eps_set.size());
  dv.reserve(eps_set.size());
  for (double e : eps_set) {
    const jets::FunctionalTriple t = evaluator(e);
    iv.push_back(t.i_val);
    qv.push_back(t.q_val);
    dv.push_back(t.d_val);
  }
  const auto tabulated = [&eps_set](const std::vector<double>& values) {
    return [&values, &eps_set](double e) {
      for (std::size_t i = 0; i < eps_set.size(); ++i) {
        if (eps_set[i] == e) return values[i];
      }
      throw std::logic_error("fit_coefficients: eps outside tabulated window");
    };
  };

  FittedExpansions out;
  out.i_fit = fit_series(tabulated(iv), 2, eps_set);
  out.q_fit = fit_series(tabulated(qv), 2, eps_set);
  out.d_fit = fit_series(tabulated(dv), 2, eps_set);

  const auto record = [&](const char* tag, const SeriesFit& fit) {
    return ExpansionRecord{family + ":" + tag,
                           fit.c_lead,
                           fit.c_next,
                           true,
                           fit.window,
                           fit.residual};
  };
  out.i_rec = record("i", out.i_fit);
  out.q_rec = record("q", out.q_fit);
  out.d_rec = record("d", out.d_fit);
  return out;
}

double quotient_slope(const TripleEvaluator& evaluator, std::span<const double> eps_set) {
  validate_window(eps_set);

  std::vector<double> xs(eps_set.begin(), eps_set.end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> g(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const jets::FunctionalTriple t = evaluator(xs[i]);
    if (!t.ratio.has_value()) {
      throw std::runtime_error("quotient_slope: ratio undefined at eps = " + std::to_string(xs[i]));
    }
    g[i] = (*t.ratio - 1.0) / xs[i];
  }

  // Neville extrapolation of g to eps = 0.
  std::vector<double> p = g;
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      p[i] = ((0.0 - xs[i + level]) * p[i] - (0.0 - xs[i]) * p[i + 1]) / (xs[i] - xs[i + level]);
    }
  }
  return p[0];
}

}  // namespace fisherflow::asymptotics
