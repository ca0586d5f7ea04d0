#pragma once

#include <array>

namespace fisherflow::reference {

/// Reference values for the Gaussian-envelope family at R = 1000 on a
/// 256x256 grid; the comparison tolerances account for the near-cancellation
/// in the defect column.
struct EnvelopeReferenceRow {
  double eps;
  double i_val;
  double q_val;
  double d_val;
  double defect;
  double ratio;
};

inline constexpr std::array<EnvelopeReferenceRow, 4> kEnvelopeR1000 = {{
    {0.030, 1.37209e-3, 1.36059e-3, 1.34850e-3, -9.47e-10, 0.999488},
    {0.040, 2.44947e-3, 2.42547e-3, 2.39930e-3, -5.88e-9, 0.999001},
    {0.050, 3.84443e-3, 3.80047e-3, 3.75429e-3, -1.05e-8, 0.999275},
    {0.055, 4.66233e-3, 4.60516e-3, 4.54700e-3, -7.90e-9, 0.999627},
}};

inline constexpr double kEnvelopeRadius = 1000.0;
inline constexpr double kFunctionalRelTol = 2e-4;
inline constexpr double kDefectRelTol = 2e-2;
inline constexpr double kRatioAbsTol = 1e-5;

/// The nine closed-form hexagonal averages, in table order.
struct HexagonalReference {
  const char* name;
  double value;
};

inline constexpr std::array<HexagonalReference, 9> kHexagonalAverages = {{
    {"grad_sq", 1.5},
    {"phi_grad_sq", 0.75},
    {"hess_sq", 1.5},
    {"phi_hess_sq", 0.375},
    {"third_sq", 1.5},
    {"phi_third_sq", 0.1875},
    {"tr_hess3", 0.1875},
    {"phi_sq", 1.5},
    {"phi_cubed", 1.5},
}};

}  // namespace fisherflow::reference
