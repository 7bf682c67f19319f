#include "anosov/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anosov/error.hpp"
#include "anosov/symspace.hpp"

namespace anosov::sections {

namespace {

using Point = std::array<double, 2>;

// Clips the line n0 x + n1 y + n2 = 0 to the square [-w, w]^2.
std::vector<Point> clip_line(const Vector& n, double w) {
  std::vector<Point> hits;
  const auto add = [&](double x, double y) {
    if (std::abs(x) > w * (1 + 1e-12) || std::abs(y) > w * (1 + 1e-12)) return;
    for (const auto& h : hits)
      if (std::abs(h[0] - x) + std::abs(h[1] - y) < 1e-12) return;
    hits.push_back({x, y});
  };
  for (double x : {-w, w})
    if (std::abs(n[1]) > 1e-300) add(x, -(n[0] * x + n[2]) / n[1]);
  for (double y : {-w, w})
    if (std::abs(n[0]) > 1e-300) add(-(n[1] * y + n[2]) / n[0], y);
  if (hits.size() < 2) return {};
  std::sort(hits.begin(), hits.end());
  return {hits.front(), hits.back()};
}

}  // namespace

std::vector<Polyline> flag_section(const Matrix& functional, int bisector, double window, int samples) {
  if (functional.rows() != 3) throw Error(ErrorCode::DimensionUnsupported, "sections need d = 3");
  const Matrix a = linalg::symmetrize(functional);
  const auto eig = linalg::jacobi_eigen(a);
  const double radius = eig.values.cwiseAbs().maxCoeff();
  std::vector<Polyline> out;
  int component = 0;

  const double small = std::min(eig.values[0], -eig.values[2]);
  if (small > 0 && std::abs(eig.values[1]) <= 1e-6 * small) {
    const auto [n1, n2] = symspace::split_rank_two(symspace::make_quadric(a));
    for (const Vector& n : {n1, n2}) {
      auto pts = clip_line(n, window);
      if (!pts.empty()) out.push_back({bisector, component++, std::move(pts)});
    }
    return out;
  }
  const int pos = static_cast<int>((eig.values.array() > 1e-12 * radius).count());
  const int neg = static_cast<int>((eig.values.array() < -1e-12 * radius).count());
  if (pos == 0 || neg == 0 || pos + neg < 3) return out;  // empty, or a degenerate double line

  // Cone over a circle: the lone-sign eigenvector is the axis.
  const int axis = pos == 1 ? 0 : 2;
  const int u = axis == 0 ? 1 : 0, v = axis == 2 ? 1 : 2;
  Polyline cur{bisector, component, {}};
  for (int k = 0; k <= samples; ++k) {
    const double phi = 2 * std::numbers::pi * k / samples;
    const Vector p = std::cos(phi) / std::sqrt(std::abs(eig.values[u])) * eig.vectors.col(u) +
                     std::sin(phi) / std::sqrt(std::abs(eig.values[v])) * eig.vectors.col(v) +
                     eig.vectors.col(axis) / std::sqrt(std::abs(eig.values[axis]));
    const bool visible = std::abs(p[2]) > 1e-12 && std::abs(p[0] / p[2]) <= window && std::abs(p[1] / p[2]) <= window;
    if (visible) {
      cur.points.push_back({p[0] / p[2], p[1] / p[2]});
    } else if (!cur.points.empty()) {
      if (cur.points.size() > 1) out.push_back(cur);
      cur = Polyline{bisector, ++component, {}};
    }
  }
  if (cur.points.size() > 1) out.push_back(cur);
  return out;
}

std::vector<Polyline> diagonal_section(const Matrix& functional, int bisector) {
  if (functional.rows() != 3) throw Error(ErrorCode::DimensionUnsupported, "sections need d = 3");
  // Tr(A diag(a, b, c)) is affine on the simplex; walk its three edges.
  const Vector diag = functional.diagonal();
  const std::array<Point, 3> corners{Point{1, 0}, Point{0, 1}, Point{0, 0}};
  const std::array<double, 3> values{diag[0], diag[1], diag[2]};
  std::vector<Point> hits;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const double vi = values[static_cast<std::size_t>(i)], vj = values[static_cast<std::size_t>(j)];
    if ((vi > 0 && vj > 0) || (vi < 0 && vj < 0) || vi == vj) continue;
    const double s = vi / (vi - vj);
    const Point& p = corners[static_cast<std::size_t>(i)];
    const Point& q = corners[static_cast<std::size_t>(j)];
    const Point hit{p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])};
    bool fresh = true;
    for (const auto& h : hits) fresh = fresh && std::abs(h[0] - hit[0]) + std::abs(h[1] - hit[1]) > 1e-12;
    if (fresh) hits.push_back(hit);
  }
  if (hits.size() < 2) return {};
  std::sort(hits.begin(), hits.end());
  return {Polyline{bisector, 0, {hits.front(), hits.back()}}};
}

std::vector<std::array<double, 2>> boost_sweep(int steps) {
  // e3 must be timelike, so the form is taken with the opposite overall sign.
  Matrix q = -Matrix::Identity(3, 3);
  q(2, 2) = 1;
  Vector l1(3), u(3);
  l1 << 0, 0, 1;
  u << 1, 0, 1;
  std::vector<std::array<double, 2>> out;
  for (int t = 1; t <= steps; ++t) {
    Vector l2(3);
    l2 << std::sinh(t), 0, std::cosh(t);
    out.push_back({static_cast<double>(t), symspace::hausdorff_to_hyperplane(symspace::so_n1_bisector(l1, l2, q), q * u)});
  }
  return out;
}

}  // namespace anosov::sections
