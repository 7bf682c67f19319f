#pragma once

// Small dense kernels used throughout the library. Matrices here are at most
// a few dozen rows, so everything is dense and Jacobi-based.

#include <Eigen/Dense>

#include <vector>

namespace anosov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

/// Eigen-decomposition of a symmetric matrix. Eigenvalues are sorted
/// non-increasing; column i of `vectors` belongs to `values[i]`.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Cyclic Jacobi rotations. Only the upper triangle of `a` is trusted.
SymmetricEigen jacobi_eigen(const Matrix& a);

/// Singular value decomposition a = U diag(s) V^T with s non-increasing.
struct Svd {
  Matrix u;
  Vector s;
  Matrix v;
};

/// One-sided (Hestenes) Jacobi SVD for square or tall matrices.
Svd jacobi_svd(const Matrix& a);

/// Logarithms of the singular values of g, sorted non-increasing, using
/// g_inv for the lower half of the spectrum. For products of many matrices
/// the small singular values of g are lost to rounding while the large ones
/// of g_inv are not, since log s_i(g) = -log s_{d+1-i}(g_inv).
Vector log_singular_values(const Matrix& g, const Matrix& g_inv);

/// Symmetric part (a + a^T) / 2.
Matrix symmetrize(const Matrix& a);

/// max |a_ij - a_ji|
double asymmetry(const Matrix& a);

/// Inertia (n_plus, n_minus, n_zero) with zero threshold rel_tol * spectral radius.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};
Inertia inertia(const Matrix& a, double rel_tol = 1e-8);

/// Largest eigenvalue of a symmetric matrix together with a unit eigenvector.
std::pair<double, Vector> max_eigenpair(const Matrix& a);

/// Orthonormal basis (columns) of the column span of `a`, by modified
/// Gram-Schmidt with re-orthogonalisation. Columns below `tol` are dropped.
Matrix orthonormal_basis(const Matrix& a, double tol = 1e-12);

/// Sines of the principal angles between the column spans of two matrices
/// with orthonormal columns and equal rank; returns the largest sine.
double subspace_distance(const Matrix& e, const Matrix& f);

/// Lexicographic packing of the upper triangle of a symmetric matrix, with
/// off-diagonal entries doubled so that the Euclidean dot product of
/// pair_vec(a) with upper_vec(z) equals Tr(a z).
Vector pair_vec(const Matrix& a);
Vector upper_vec(const Matrix& z);
Matrix from_upper_vec(const Vector& v, int dim);

}  // namespace linalg
}  // namespace anosov
