#pragma once

// Two-dimensional sections of bisectors in d = 3, as polylines for plotting.

#include <array>
#include <vector>

#include "anosov/linalg.hpp"

namespace anosov::sections {

struct Polyline {
  int bisector = 0;
  int component = 0;
  std::vector<std::array<double, 2>> points;
};

/// Zero set of v^T A v on RP^2 in the affine chart z = 1, clipped to the
/// square [-window, window]^2. A line pair gives two straight components;
/// a nondegenerate conic is traced by `samples` points per branch.
std::vector<Polyline> flag_section(const Matrix& functional, int bisector, double window = 2.0, int samples = 256);

/// Intersection of {Tr(A Y) = 0} with the simplex of diagonal tensors
/// diag(a, b, 1 - a - b), in chart coordinates (a, b). Empty when the
/// bisector misses the simplex.
std::vector<Polyline> diagonal_section(const Matrix& functional, int bisector);

/// Bisectors of e3 and its boost by t = 1..steps for the form x^2 + y^2 - z^2, with the
/// Hausdorff angle to the tangent plane of the light cone at (1,0,1).
std::vector<std::array<double, 2>> boost_sweep(int steps);

}  // namespace anosov::sections
