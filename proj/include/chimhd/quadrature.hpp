#pragma once

#include <array>
#include <vector>

namespace chimhd {

/// Quadrature on the reference triangle (0,0),(1,0),(0,1), stored in
/// barycentric coordinates. Weights sum to the reference area 1/2; a physical
/// integral is sum_q (2*area*w_q) f(x_q).
struct QuadratureRule {
  int degree = 0;  // total polynomial degree integrated exactly
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// One-point centroid rule, exact for degree 1.
QuadratureRule centroid_rule();

/// Collapsed (Duffy) n x n Gauss-Legendre product rule, exact for total
/// degree 2n-2, positive weights, machine-precision nodes.
QuadratureRule duffy_rule(int n);

/// The rule used for every volume term of the scheme (degree 6).
QuadratureRule default_volume_rule();

/// Gauss-Legendre nodes/weights on [0,1]; weights sum to 1.
struct SegmentRule {
  std::vector<double> points;
  std::vector<double> weights;
};
SegmentRule segment_rule(int n);

}  // namespace chimhd
