#include "anosov/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anosov/error.hpp"

namespace anosov::symspace {

namespace {

double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

void require_same_dim(int a, int b) {
  if (a != b)
    throw Error(ErrorCode::DimensionMismatch, "dimensions " + std::to_string(a) + " and " + std::to_string(b));
}

// Lower-triangular F with a = F F^T for a positive definite a.
Matrix cholesky_factor(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
  return llt.matrixL();
}

Matrix lower_inverse(const Matrix& f) {
  return f.triangularView<Eigen::Lower>().solve(Matrix::Identity(f.rows(), f.cols()));
}

}  // namespace

SpdPoint make_point(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2)
    throw Error(ErrorCode::DimensionMismatch, "point matrix must be square of size >= 2");
  const double scale = std::max(1.0, max_abs(matrix));
  if (linalg::asymmetry(matrix) > tol::kSymmetricInput * scale)
    throw Error(ErrorCode::NotSymmetric, "input matrix is not symmetric");
  const Matrix sym = linalg::symmetrize(matrix);
  const auto eig = linalg::jacobi_eigen(sym);
  const int d = static_cast<int>(sym.rows());
  const double lmin = eig.values[d - 1];
  if (!(lmin > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(lmin));
  const double log_det = eig.values.array().log().sum();
  const double s = std::exp(log_det / d);
  if (lmin / s <= tol::kPositive)
    throw Error(ErrorCode::NotPositiveDefinite, "normalized smallest eigenvalue below threshold");

  SpdPoint p;
  p.matrix_ = sym / s;
  p.factor_ = cholesky_factor(p.matrix_);
  p.factor_inv_ = lower_inverse(p.factor_);
  p.inverse_ = linalg::symmetrize(p.factor_inv_.transpose() * p.factor_inv_);
  return p;
}

SpdPoint act(const Matrix& g, const Matrix& g_inv, const SpdPoint& x) {
  require_same_dim(static_cast<int>(g.rows()), x.dim());
  SpdPoint p;
  p.factor_ = g * x.factor_;
  p.factor_inv_ = x.factor_inv_ * g_inv;
  p.matrix_ = linalg::symmetrize(p.factor_ * p.factor_.transpose());
  p.inverse_ = linalg::symmetrize(p.factor_inv_.transpose() * p.factor_inv_);
  return p;
}

SymTensor make_tensor(const Matrix& matrix, TensorRole role) {
  if (matrix.rows() != matrix.cols()) throw Error(ErrorCode::DimensionMismatch, "tensor must be square");
  const double scale = std::max(1.0, max_abs(matrix));
  if (linalg::asymmetry(matrix) > tol::kSymmetricInput * scale)
    throw Error(ErrorCode::NotSymmetric, "tensor is not symmetric");
  SymTensor t{linalg::symmetrize(matrix), role};
  if (role == TensorRole::BoundaryRepresentative) {
    const auto eig = linalg::jacobi_eigen(t.matrix);
    if (eig.values[eig.values.size() - 1] < -1e-9 * std::max(1.0, eig.values[0]))
      throw Error(ErrorCode::NotPositiveDefinite, "boundary tensor is not positive semidefinite");
    if (max_abs(t.matrix) == 0.0) throw Error(ErrorCode::ZeroVector, "boundary tensor is zero");
  }
  return t;
}

SymTensor rank_one(const Vector& v) {
  if (v.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "rank-one tensor of the zero vector");
  return SymTensor{v * v.transpose(), TensorRole::BoundaryRepresentative};
}

CartanVector CartanVector::reversed_negated() const { return CartanVector{-entries.reverse()}; }

double selberg_invariant(const SpdPoint& x, const SpdPoint& y) {
  require_same_dim(x.dim(), y.dim());
  // Tr(X^{-1} Y) = ||F_x^{-1} F_y||_F^2, which stays positive under rounding.
  const double tr = (x.factor_inverse() * y.factor()).squaredNorm();
  return std::max(0.0, std::log(tr / x.dim()));
}

double selberg_difference(const SpdPoint& x, const SymTensor& h, const SpdPoint& o) {
  require_same_dim(x.dim(), o.dim());
  require_same_dim(x.dim(), static_cast<int>(h.matrix.rows()));
  const double tx = (x.inverse().array() * h.matrix.array()).sum();
  const double to = (o.inverse().array() * h.matrix.array()).sum();
  if (!(tx > 0.0) || !(to > 0.0)) throw Error(ErrorCode::DegeneratePairing, "nonpositive trace pairing");
  return std::log(tx) - std::log(to);
}

CartanVector vector_distance(const SpdPoint& x, const SpdPoint& y) {
  require_same_dim(x.dim(), y.dim());
  // X^{-1}Y is similar to B^T B with B = F_x^{-1} F_y, so its eigenvalues
  // are the squared singular values of B.
  const Matrix b = x.factor_inverse() * y.factor();
  const Matrix b_inv = y.factor_inverse() * x.factor();
  Vector v = 2.0 * linalg::log_singular_values(b, b_inv);
  v.array() -= v.mean();
  return CartanVector{v};
}

OmegaForm::OmegaForm(const Vector& coefficients) {
  if (coefficients.size() < 2) throw Error(ErrorCode::DimensionMismatch, "omega form needs at least 2 coefficients");
  coefficients_ = coefficients;
  coefficients_.array() -= coefficients_.mean();
  if (coefficients_.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, coefficients.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::DegenerateForm, "omega form is constant, its Weyl orbit does not span");
  sorted_ = coefficients_;
  std::sort(sorted_.data(), sorted_.data() + sorted_.size(), std::greater<>());
}

OmegaForm OmegaForm::omega1(int dim) {
  Vector c = Vector::Zero(dim);
  c[0] = 1.0;
  return OmegaForm(c);
}

OmegaForm OmegaForm::omega_delta(int dim) {
  Vector c = Vector::Zero(dim);
  c[0] = 1.0;
  c[dim - 1] = -1.0;
  return OmegaForm(c);
}

double omega_seminorm(const OmegaForm& w, const CartanVector& v) {
  require_same_dim(w.dim(), v.dim());
  return w.sorted_coefficients().dot(v.entries);
}

std::pair<double, double> omega_orbit_range(const OmegaForm& w, const CartanVector& v) {
  require_same_dim(w.dim(), v.dim());
  const double hi = w.sorted_coefficients().dot(v.entries);
  const double lo = w.sorted_coefficients().dot(v.entries.reverse());
  return {lo, hi};
}

double omega_min_abs(const OmegaForm& w, const CartanVector& v) {
  const auto [lo, hi] = omega_orbit_range(w, v);
  if (lo > 0.0) return lo;
  if (hi < 0.0) return -hi;
  const int d = w.dim();
  if (d > 8) return 0.0;  // lower bound only; exhaustive check too costly
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += w.coefficients()[i] * v.entries[perm[static_cast<std::size_t>(i)]];
    best = std::min(best, std::abs(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double finsler_distance(const OmegaForm& w, const SpdPoint& x, const SpdPoint& y) {
  return omega_seminorm(w, vector_distance(x, y));
}

HalfSpace half_space(const SpdPoint& o, const SpdPoint& p) {
  require_same_dim(o.dim(), p.dim());
  HalfSpace h;
  h.functional = linalg::symmetrize(p.inverse() - o.inverse());
  const double scale = std::max(max_abs(p.inverse()), max_abs(o.inverse()));
  if (max_abs(h.functional) <= 1e-12 * scale) throw Error(ErrorCode::IdenticalPoints, "half-space of a point with itself");
  return h;
}

Quadric make_quadric(const Matrix& form) {
  Quadric q;
  q.form = linalg::symmetrize(form);
  q.signature = linalg::inertia(q.form, tol::kInertia);
  return q;
}

Quadric restrict_to_flags(const HalfSpace& h) { return make_quadric(h.functional); }

double busemann_rank_one(const Vector& wv, const SpdPoint& x, const SpdPoint& o) {
  if (wv.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "Busemann direction is zero");
  const double nx = (x.factor_inverse() * wv).squaredNorm();
  const double no = (o.factor_inverse() * wv).squaredNorm();
  return 0.5 * (std::log(nx) - std::log(no));
}

double mixed_busemann_omega1(const Matrix& basis, const SpdPoint& x, const SpdPoint& o) {
  if (basis.cols() == 0) throw Error(ErrorCode::EmptySubspace, "empty subspace");
  const Matrix e = linalg::orthonormal_basis(basis);
  if (e.cols() == 0) throw Error(ErrorCode::EmptySubspace, "subspace basis is degenerate");
  const Matrix ax = x.factor_inverse() * e;
  const Matrix ao = o.factor_inverse() * e;
  const Matrix mx = ax.transpose() * ax;
  const Matrix mo = ao.transpose() * ao;
  // Generalized eigenproblem mx v = lambda mo v reduced by the Cholesky factor of mo.
  const Matrix l = cholesky_factor(mo);
  const Matrix l_inv = lower_inverse(l);
  const Matrix c = linalg::symmetrize(l_inv * mx * l_inv.transpose());
  const double lam = linalg::max_eigenpair(c).first;
  return 0.5 * std::log(lam);
}

namespace {

Matrix line_form(const Vector& v, const Matrix& q) {
  const double qvv = v.dot(q * v);
  const Vector qv = q * v;
  return -q + 2.0 * qv * qv.transpose() / qvv;
}

}  // namespace

Quadric so_n1_bisector(const Vector& l1, const Vector& l2, const Matrix& q) {
  require_same_dim(static_cast<int>(l1.size()), static_cast<int>(q.rows()));
  require_same_dim(static_cast<int>(l2.size()), static_cast<int>(q.rows()));
  for (const Vector* v : {&l1, &l2}) {
    const double qvv = v->dot(q * *v);
    if (!(qvv > 1e-12 * v->squaredNorm() * std::max(1.0, max_abs(q))))
      throw Error(ErrorCode::NotTimelike, "line is not timelike for the form");
  }
  const Matrix diff = line_form(l1, q) - line_form(l2, q);
  const double scale = std::max(max_abs(line_form(l1, q)), max_abs(line_form(l2, q)));
  if (max_abs(diff) <= 1e-12 * scale) throw Error(ErrorCode::IdenticalLines, "bisector of a line with itself");
  return make_quadric(diff);
}

std::pair<Vector, Vector> split_rank_two(const Quadric& quadric) {
  // The two nonzero eigenvalues may differ by many orders of magnitude (a
  // bisector of nearly lightlike lines), so the middle of the spectrum is
  // compared with the smaller of them rather than with the spectral radius.
  const auto eig = linalg::jacobi_eigen(quadric.form);
  const int n = static_cast<int>(eig.values.size());
  const double small = std::min(eig.values[0], -eig.values[n - 1]);
  bool rank_two = small > 0;
  for (int i = 1; i + 1 < n && rank_two; ++i) rank_two = std::abs(eig.values[i]) <= 1e-6 * small;
  if (!rank_two) throw Error(ErrorCode::DegenerateForm, "quadric is not a pair of hyperplanes");
  // form ~ a a^T - b b^T = (a - b)(a + b)^T symmetrized
  const Vector a = std::sqrt(eig.values[0]) * eig.vectors.col(0);
  const Vector b = std::sqrt(-eig.values[n - 1]) * eig.vectors.col(n - 1);
  return {(a - b).normalized(), (a + b).normalized()};
}

double hausdorff_to_hyperplane(const Quadric& quadric, const Vector& normal) {
  const auto [n1, n2] = split_rank_two(quadric);
  const Vector m = normal.normalized();
  const auto angle = [&](const Vector& n) { return std::acos(std::min(1.0, std::abs(n.dot(m)))); };
  return std::max(angle(n1), angle(n2));
}

double restricted_selberg_sl2(int k, double t) {
  const double top = k * std::abs(t);
  double s = 0.0;
  for (int i = 0; i <= k; ++i) s += std::exp((k - 2 * i) * t - top);
  return top + std::log(s);
}

}  // namespace anosov::symspace
