#include <gtest/gtest.h>

#include <random>

#include "anosov/linalg.hpp"
#include "test_support.hpp"

using namespace anosov;

TEST(Linalg, JacobiEigenMatchesSelfAdjointSolver) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 6;
    const Matrix a = anosov::testing::random_symmetric(d, rng, 2.0);
    const auto mine = linalg::jacobi_eigen(a);
    const Eigen::SelfAdjointEigenSolver<Matrix> oracle(a);
    const Vector expect = oracle.eigenvalues().reverse();
    EXPECT_LT((mine.values - expect).cwiseAbs().maxCoeff(), 1e-12 * (1 + a.norm()));
    for (int i = 0; i + 1 < d; ++i) EXPECT_GE(mine.values[i], mine.values[i + 1]);
    const Matrix rebuilt = mine.vectors * mine.values.asDiagonal() * mine.vectors.transpose();
    EXPECT_LT((rebuilt - a).norm(), 1e-11 * (1 + a.norm()));
    EXPECT_LT((mine.vectors.transpose() * mine.vectors - Matrix::Identity(d, d)).norm(), 1e-12);
  }
}

TEST(Linalg, JacobiSvdMatchesEigenJacobiSvd) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 6;
    const Matrix a = anosov::testing::random_sl(d, rng, 0.8);
    const auto mine = linalg::jacobi_svd(a);
    const Eigen::JacobiSVD<Matrix> oracle(a);
    EXPECT_LT((mine.s - oracle.singularValues()).cwiseAbs().maxCoeff(), 1e-11 * oracle.singularValues()[0]);
    EXPECT_LT((mine.u * mine.s.asDiagonal() * mine.v.transpose() - a).norm(), 1e-11 * a.norm());
  }
}

TEST(Linalg, LogSingularValuesSurviveLongProducts) {
  // diag(2, 1/2)^60 has singular values 2^{+-60}; the small one is lost in
  // the matrix itself but recovered from the inverse.
  Matrix g = Matrix::Zero(2, 2), gi = Matrix::Zero(2, 2);
  g.diagonal() << std::pow(2.0, 60), std::pow(2.0, -60);
  gi.diagonal() << std::pow(2.0, -60), std::pow(2.0, 60);
  Matrix r(2, 2);
  r << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
  const Vector v = linalg::log_singular_values(r * g * r.transpose(), r * gi * r.transpose());
  EXPECT_NEAR(v[0], 60 * std::log(2.0), 1e-9);
  EXPECT_NEAR(v[1], -60 * std::log(2.0), 1e-9);
}

TEST(Linalg, PairVecPairsToTrace) {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 6; ++d) {
    const Matrix a = anosov::testing::random_symmetric(d, rng), z = anosov::testing::random_symmetric(d, rng);
    EXPECT_NEAR(linalg::pair_vec(a).dot(linalg::upper_vec(z)), (a * z).trace(), 1e-12);
    EXPECT_LT((linalg::from_upper_vec(linalg::upper_vec(z), d) - z).norm(), 1e-15);
    EXPECT_EQ(linalg::pair_vec(a).size(), d * (d + 1) / 2);
  }
}

TEST(Linalg, InertiaCountsSigns) {
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 2, 0, -5;
  const linalg::Inertia expect{1, 1, 1};
  EXPECT_EQ(linalg::inertia(a), expect);
  a(1, 1) = 1e-12;  // below the relative threshold
  EXPECT_EQ(linalg::inertia(a), expect);
  EXPECT_EQ(linalg::inertia(Matrix::Zero(2, 2)).zero, 2);
}

TEST(Linalg, OrthonormalBasisAndSubspaceDistance) {
  Matrix a(3, 3);
  a << 1, 2, 3, 0, 1, 1, 0, 0, 0;  // rank 2, third column dependent
  const Matrix q = linalg::orthonormal_basis(a);
  EXPECT_EQ(q.cols(), 2);
  EXPECT_LT((q.transpose() * q - Matrix::Identity(2, 2)).norm(), 1e-14);
  Matrix e = Matrix::Zero(3, 2);
  e(0, 0) = e(1, 1) = 1;
  EXPECT_NEAR(linalg::subspace_distance(q, e), 0.0, 1e-14);
  Matrix f = Matrix::Zero(3, 1), g = Matrix::Zero(3, 1);
  f(0, 0) = 1;
  g(0, 0) = std::cos(0.4);
  g(2, 0) = std::sin(0.4);
  EXPECT_NEAR(linalg::subspace_distance(f, g), std::sin(0.4), 1e-14);
}

TEST(Linalg, MaxEigenpair) {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const auto [lam, v] = linalg::max_eigenpair(a);
  EXPECT_NEAR(lam, 3.0, 1e-14);
  EXPECT_NEAR(std::abs(v[0]), std::sqrt(0.5), 1e-14);
}
