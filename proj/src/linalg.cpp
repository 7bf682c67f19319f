#include "anosov/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace anosov::linalg {

SymmetricEigen jacobi_eigen(const Matrix& input) {
  const int n = static_cast<int>(input.rows());
  Matrix a = input.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-17 * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });
  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (int i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

Svd jacobi_svd(const Matrix& input) {
  const int m = static_cast<int>(input.rows());
  const int n = static_cast<int>(input.cols());
  Matrix u = input;
  Matrix v = Matrix::Identity(n, n);

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = u.col(p).squaredNorm();
        const double beta = u.col(q).squaredNorm();
        const double gamma = u.col(p).dot(u.col(q));
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int k = 0; k < m; ++k) {
          const double up = u(k, p), uq = u(k, q);
          u(k, p) = c * up - s * uq;
          u(k, q) = s * up + c * uq;
        }
        for (int k = 0; k < n; ++k) {
          const double vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  Vector s(n);
  for (int j = 0; j < n; ++j) s[j] = u.col(j).norm();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return s[i] > s[j]; });

  Svd out{Matrix(m, n), Vector(n), Matrix(n, n)};
  for (int i = 0; i < n; ++i) {
    const int j = order[i];
    out.s[i] = s[j];
    out.v.col(i) = v.col(j);
    if (s[j] > 0) {
      out.u.col(i) = u.col(j) / s[j];
    } else {
      out.u.col(i).setZero();
    }
  }
  // Complete U for exactly singular inputs so that it stays orthogonal.
  for (int i = 0; i < n; ++i) {
    if (out.s[i] > 0) continue;
    Vector cand = Vector::Zero(m);
    for (int e = 0; e < m; ++e) {
      cand.setZero();
      cand[e] = 1.0;
      for (int k = 0; k < n; ++k)
        if (k != i) cand -= out.u.col(k).dot(cand) * out.u.col(k);
      if (cand.norm() > 1e-6) break;
    }
    out.u.col(i) = cand.normalized();
  }
  return out;
}

Vector log_singular_values(const Matrix& g, const Matrix& g_inv) {
  const int d = static_cast<int>(g.rows());
  const Vector top = jacobi_svd(g).s;
  const Vector bottom = jacobi_svd(g_inv).s;
  Vector out(d);
  const int upper = (d + 1) / 2;
  for (int i = 0; i < d; ++i) {
    out[i] = i < upper ? std::log(top[i]) : -std::log(bottom[d - 1 - i]);
  }
  // Enforce the ordering that exact arithmetic guarantees.
  for (int i = 1; i < d; ++i) out[i] = std::min(out[i], out[i - 1]);
  return out;
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double asymmetry(const Matrix& a) { return (a - a.transpose()).cwiseAbs().maxCoeff(); }

Inertia inertia(const Matrix& a, double rel_tol) {
  const auto eig = jacobi_eigen(symmetrize(a));
  const double radius = eig.values.cwiseAbs().maxCoeff();
  Inertia out;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values[i];
    if (std::abs(lam) <= rel_tol * radius || radius == 0.0) {
      ++out.zero;
    } else if (lam > 0) {
      ++out.positive;
    } else {
      ++out.negative;
    }
  }
  return out;
}

std::pair<double, Vector> max_eigenpair(const Matrix& a) {
  const auto eig = jacobi_eigen(a);
  return {eig.values[0], eig.vectors.col(0)};
}

Matrix orthonormal_basis(const Matrix& a, double tol) {
  std::vector<Vector> kept;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int j = 0; j < a.cols(); ++j) {
    Vector c = a.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) c -= q.dot(c) * q;
    const double nrm = c.norm();
    if (nrm > tol * scale) kept.push_back(c / nrm);
  }
  Matrix out(a.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = kept[j];
  return out;
}

double subspace_distance(const Matrix& e, const Matrix& f) {
  // Largest principal-angle sine = spectral norm of (I - F F^T) E.
  const Matrix residual = e - f * (f.transpose() * e);
  const Vector s = jacobi_svd(residual).s;
  return std::min(1.0, s.size() ? s[0] : 0.0);
}

Vector pair_vec(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  Vector out(d * (d + 1) / 2);
  int k = 0;
  for (int i = 0; i < d; ++i) out[k++] = a(i, i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out[k++] = a(i, j) + a(j, i);
  return out;
}

Vector upper_vec(const Matrix& z) {
  const int d = static_cast<int>(z.rows());
  Vector out(d * (d + 1) / 2);
  int k = 0;
  for (int i = 0; i < d; ++i) out[k++] = z(i, i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out[k++] = 0.5 * (z(i, j) + z(j, i));
  return out;
}

Matrix from_upper_vec(const Vector& v, int dim) {
  Matrix z(dim, dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) z(i, i) = v[k++];
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) z(i, j) = z(j, i) = v[k++];
  return z;
}

}  // namespace anosov::linalg
