#pragma once

#include "fisherflow/jets.hpp"
#include "fisherflow/rational.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fisherflow::asymptotics {

/// Expansion coefficients for one functional of one family.
struct ExpansionRecord {
  std::string family;
  double quadratic{0};
  double cubic{0};
  bool fitted{false};
  std::vector<double> fit_window;  // empty for closed forms
  double residual{0};              // max abs fit residual (fitted records only)
};

/// Closed-form torus expansion coefficients as exact rationals.
struct TorusClosedForm {
  Rational a2{3, 2};
  Rational a3{3, 4};
  Rational q2{3, 2};
  Rational q3{3, 8};
  Rational d2{3, 2};
  Rational d3{-3, 16};

  /// a2 d3 + a3 d2 - 2 q2 q3 = -9/32, the leading defect coefficient.
  Rational defect_quintic() const { return a2 * d3 + a3 * d2 - Rational{2, 1} * q2 * q3; }

  /// (a3 + d3 - 2 q3) / a2 = -1/8, the leading slope of ratio - 1.
  Rational quotient_slope() const { return (a3 + d3 - Rational{2, 1} * q3) / a2; }

  std::array<ExpansionRecord, 3> records() const;
};

TorusClosedForm closed_form_torus();

using TripleEvaluator = std::function<jets::FunctionalTriple(double)>;
using ScalarEvaluator = std::function<double(double)>;

/// Least-squares fit of c_p e^p + c_{p+1} e^{p+1} + c_{p+2} e^{p+2} over the
/// window; the top power absorbs the series remainder.
struct SeriesFit {
  int lead_power{2};
  double c_lead{0};
  double c_next{0};
  double c_nuisance{0};
  double residual{0};  // max abs residual over the window
  double cond{0};      // condition number of the column-scaled design matrix
  std::vector<double> window;
};

SeriesFit fit_series(const ScalarEvaluator& value_at, int lead_power,
                     std::span<const double> eps_set);

struct FittedExpansions {
  ExpansionRecord i_rec;
  ExpansionRecord q_rec;
  ExpansionRecord d_rec;
  SeriesFit i_fit;
  SeriesFit q_fit;
  SeriesFit d_fit;
};

/// Fits quadratic/cubic coefficients of all three functionals at once.
FittedExpansions fit_coefficients(const TripleEvaluator& evaluator,
                                  std::span<const double> eps_set,
                                  const std::string& family = "fitted");

/// Richardson (Neville) extrapolation of (ratio(eps) - 1) / eps to eps -> 0.
/// Throws if the ratio is undefined at any window point.
double quotient_slope(const TripleEvaluator& evaluator, std::span<const double> eps_set);

}  // namespace fisherflow::asymptotics
