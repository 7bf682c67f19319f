#pragma once

// Geometry of the projective model X_d = P(Sym^+_d) of SL(d,R)/SO(d).
//
// A point is stored by a determinant-one representative Q together with
// Q^{-1} and a factor F with Q = F F^T. Orbit points g.o are built from
// (g, g^{-1}) directly so that none of the three is obtained by inverting
// an ill-conditioned matrix.

#include <optional>
#include <utility>
#include <vector>

#include "anosov/linalg.hpp"

namespace anosov::symspace {

/// Tolerances shared by every module.
namespace tol {
inline constexpr double kSymmetrize = 1e-12;
inline constexpr double kSymmetricInput = 1e-9;
inline constexpr double kPositive = 1e-10;
inline constexpr double kMetric = 1e-9;
inline constexpr double kInertia = 1e-8;
}  // namespace tol

class SpdPoint {
public:
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& inverse() const { return inverse_; }
  /// Q = factor * factor^T
  const Matrix& factor() const { return factor_; }
  const Matrix& factor_inverse() const { return factor_inv_; }

private:
  friend SpdPoint make_point(const Matrix&);
  friend SpdPoint act(const Matrix&, const Matrix&, const SpdPoint&);
  Matrix matrix_;
  Matrix inverse_;
  Matrix factor_;
  Matrix factor_inv_;
};

/// Normalizes a symmetric positive definite matrix to determinant one.
SpdPoint make_point(const Matrix& matrix);

/// g . x = g X g^T, given g and its inverse. Requires |det g| = 1.
SpdPoint act(const Matrix& g, const Matrix& g_inv, const SpdPoint& x);

enum class TensorRole { PointRepresentative, BoundaryRepresentative, Functional };

struct SymTensor {
  Matrix matrix;
  TensorRole role = TensorRole::BoundaryRepresentative;
};

/// Validates symmetry and, for boundary representatives, PSD and nonzero.
SymTensor make_tensor(const Matrix& matrix, TensorRole role = TensorRole::BoundaryRepresentative);
/// The rank-one boundary tensor v v^T.
SymTensor rank_one(const Vector& v);

/// Sorted vector-valued distance, entries non-increasing with zero sum.
struct CartanVector {
  Vector entries;
  int dim() const { return static_cast<int>(entries.size()); }
  CartanVector reversed_negated() const;
  double norm() const { return entries.norm(); }
};

double selberg_invariant(const SpdPoint& x, const SpdPoint& y);

/// log Tr(X^{-1}S) - log Tr(O^{-1}S)
double selberg_difference(const SpdPoint& x, const SymTensor& h, const SpdPoint& o);

/// Logs of the eigenvalues of X^{-1} Y, sorted non-increasing.
CartanVector vector_distance(const SpdPoint& x, const SpdPoint& y);

class OmegaForm {
public:
  /// Shifts the coefficients to zero mean; rejects the zero functional.
  explicit OmegaForm(const Vector& coefficients);
  static OmegaForm omega1(int dim);
  static OmegaForm omega_delta(int dim);

  int dim() const { return static_cast<int>(coefficients_.size()); }
  const Vector& coefficients() const { return coefficients_; }
  const Vector& sorted_coefficients() const { return sorted_; }
  const Vector& dual_vector() const { return coefficients_; }

private:
  Vector coefficients_;
  Vector sorted_;
};

/// max over permutations w of omega(w . v)
double omega_seminorm(const OmegaForm& w, const CartanVector& v);

/// Range [min, max] of omega(w . v) over all permutations w.
std::pair<double, double> omega_orbit_range(const OmegaForm& w, const CartanVector& v);

/// min over permutations w of |omega(w . v)|
double omega_min_abs(const OmegaForm& w, const CartanVector& v);

double finsler_distance(const OmegaForm& w, const SpdPoint& x, const SpdPoint& y);

struct HalfSpace {
  Matrix functional;
  std::optional<std::vector<int>> source_word;
  std::optional<Matrix> source_element;

  /// Tr(A Y)
  double pairing(const Matrix& y) const { return (functional.array() * y.array()).sum(); }
};

/// The closed half-space of points at least as close (in Selberg sense) to o
/// as to p: A = P^{-1} - O^{-1}, so that Tr(A O) > 0.
HalfSpace half_space(const SpdPoint& o, const SpdPoint& p);

struct Quadric {
  Matrix form;
  linalg::Inertia signature;
};

Quadric make_quadric(const Matrix& form);
Quadric restrict_to_flags(const HalfSpace& h);

/// (1/2) log( w^T X^{-1} w / w^T O^{-1} w )
double busemann_rank_one(const Vector& wv, const SpdPoint& x, const SpdPoint& o);

/// Max of busemann_rank_one over unit vectors of the span of `basis`.
double mixed_busemann_omega1(const Matrix& basis, const SpdPoint& x, const SpdPoint& o);

/// q_{l1} - q_{l2}, where q_l equals q on l and -q on its q-orthogonal.
Quadric so_n1_bisector(const Vector& l1, const Vector& l2, const Matrix& q);

/// For a rank-two quadric of signature (1,1,*), the normals of the two
/// hyperplanes whose union is its zero set.
std::pair<Vector, Vector> split_rank_two(const Quadric& quadric);

/// Hausdorff distance (angle metric on projective space) between the zero
/// set of a rank-two (1,1,*) quadric and the hyperplane with given normal.
double hausdorff_to_hyperplane(const Quadric& quadric, const Vector& normal);

/// log sum_{i=0..k} exp((k - 2i) t)
double restricted_selberg_sl2(int k, double t);

}  // namespace anosov::symspace
