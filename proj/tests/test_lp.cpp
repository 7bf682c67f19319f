#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "anosov/lp.hpp"

using anosov::lp::RevisedSimplex;
using anosov::lp::Status;

namespace {

// Brute force: every basis of m columns, keep the feasible one with the best cost.
std::optional<double> vertex_enumeration(const std::vector<std::vector<double>>& cols, const std::vector<double>& c,
                                         const std::vector<double>& b) {
  const std::size_t m = b.size(), n = cols.size();
  std::optional<double> best;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == m) {
      Eigen::MatrixXd basis(m, m);
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[pick[j]][i];
      Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
      if (lu.rank() < static_cast<Eigen::Index>(m)) return;
      const Eigen::VectorXd x = lu.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(m)));
      if (x.minCoeff() < -1e-9) return;
      double cost = 0;
      for (std::size_t j = 0; j < m; ++j) cost += c[pick[j]] * x[static_cast<Eigen::Index>(j)];
      if (!best || cost < *best) best = cost;
      return;
    }
    for (std::size_t k = start; k < n; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(Lp, MatchesVertexEnumerationOnBoundedProblems) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 6), cost(-5, 5);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + trial % 3, n = 5 + trial % 4;
    std::vector<std::vector<double>> cols(n, std::vector<double>(m));
    std::vector<double> c(n), b(m);
    for (auto& col : cols)
      for (auto& v : col) v = entry(rng);
    // A simplex row keeps the feasible region bounded.
    for (auto& col : cols) col[m - 1] = 1 + std::abs(col[m - 1]);
    for (auto& v : c) v = cost(rng);
    for (std::size_t i = 0; i < m; ++i) b[i] = entry(rng);
    b[m - 1] = 10;
    RevisedSimplex<double> lp(cols, c, b);
    const Status st = lp.solve();
    const auto oracle = vertex_enumeration(cols, c, b);
    if (!oracle) {
      EXPECT_EQ(st, Status::Infeasible);
      continue;
    }
    ASSERT_EQ(st, Status::Optimal);
    EXPECT_NEAR(lp.objective(), *oracle, 1e-7 * (1 + std::abs(*oracle)));
    // Primal feasibility and strong duality.
    const auto x = lp.solution();
    const auto y = lp.duals();
    double dual_obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n; ++j) row += cols[j][i] * x[j];
      EXPECT_NEAR(row, b[i], 1e-8);
      dual_obj += y[i] * b[i];
    }
    EXPECT_NEAR(dual_obj, lp.objective(), 1e-7 * (1 + std::abs(*oracle)));
    for (std::size_t j = 0; j < n; ++j) {
      double reduced = c[j];
      for (std::size_t i = 0; i < m; ++i) reduced -= y[i] * cols[j][i];
      EXPECT_GE(reduced, -1e-8);
    }
    ++compared;
  }
  EXPECT_GT(compared, 100);
}

TEST(Lp, ExactAndDoubleAgree) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> entry(-3, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 3, n = 7;
    std::vector<std::vector<double>> cols(n, std::vector<double>(m));
    std::vector<std::vector<mpq_class>> qcols(n, std::vector<mpq_class>(m));
    std::vector<double> c(n), b{1, 2, 12};
    std::vector<mpq_class> qc(n), qb{1, 2, 12};
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const int v = i + 1 == m ? 1 + std::abs(entry(rng)) : entry(rng);
        cols[j][i] = v;
        qcols[j][i] = v;
      }
      const int cj = entry(rng);
      c[j] = cj;
      qc[j] = cj;
    }
    RevisedSimplex<double> fl(cols, c, b);
    RevisedSimplex<mpq_class> ex(qcols, qc, qb);
    const auto s1 = fl.solve(), s2 = ex.solve();
    ASSERT_EQ(s1, s2);
    if (s1 == Status::Optimal) EXPECT_NEAR(fl.objective(), ex.objective().get_d(), 1e-9);
  }
}

TEST(Lp, DetectsInfeasibleAndUnbounded) {
  // x1 + x2 = -1 with x >= 0
  RevisedSimplex<double> inf({{1.0}, {1.0}}, {0.0, 0.0}, {-1.0});
  EXPECT_EQ(inf.solve(), Status::Infeasible);
  // min -x1 subject to x1 - x2 = 1
  RevisedSimplex<double> unb({{1.0}, {-1.0}}, {-1.0, 0.0}, {1.0});
  EXPECT_EQ(unb.solve(), Status::Unbounded);
}

TEST(Lp, AddColumnReoptimizes) {
  // min x1 + x2 subject to x1 + x2 = 1, then a cheaper column arrives.
  RevisedSimplex<mpq_class> lp({{1}, {1}}, {1, 1}, {1});
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_EQ(lp.objective(), 1);
  lp.add_column({2}, mpq_class(1));
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_EQ(lp.objective(), mpq_class(1, 2));
}
