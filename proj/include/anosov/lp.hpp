#pragma once

// Dense revised simplex for   minimize c^T x  subject to  A x = b, x >= 0.
//
// The basis inverse is kept explicitly (m is small in every use in this
// library) which makes column generation cheap: add_column() prices a new
// column against the current basis and re-optimises from there.
//
// Scalar is double or mpq_class; ScalarTraits supplies the comparisons.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace anosov::lp {

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double pivot_tol() { return 1e-9; }
  static double cost_tol() { return 1e-11; }
  static double feas_tol() { return 1e-9; }
  static double abs(double x) { return std::abs(x); }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool exact = true;
  static mpq_class pivot_tol() { return 0; }
  static mpq_class cost_tol() { return 0; }
  static mpq_class feas_tol() { return 0; }
  static mpq_class abs(const mpq_class& x) { return ::abs(x); }
  static double to_double(const mpq_class& x) { return x.get_d(); }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

template <class Scalar>
class RevisedSimplex {
public:
  using Traits = ScalarTraits<Scalar>;
  using Column = std::vector<Scalar>;

  /// `columns[j]` is column j of A (length m).
  RevisedSimplex(std::vector<Column> columns, std::vector<Scalar> costs, std::vector<Scalar> rhs)
      : m_(rhs.size()), columns_(std::move(columns)), costs_(std::move(costs)), rhs_(std::move(rhs)) {
    row_sign_.assign(m_, Scalar(1));
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs_[i] < 0) {
        row_sign_[i] = Scalar(-1);
        rhs_[i] = -rhs_[i];
      }
    }
    for (auto& col : columns_) apply_signs(col);
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return columns_.size(); }

  /// Appends a structural column; the current basis stays primal feasible.
  std::size_t add_column(Column col, Scalar cost) {
    apply_signs(col);
    columns_.push_back(std::move(col));
    costs_.push_back(std::move(cost));
    return columns_.size() - 1;
  }

  void set_iteration_limit(std::size_t limit) { iteration_limit_ = limit; }

  Status solve() {
    if (!initialised_) {
      if (!phase_one()) return status_;
      initialised_ = true;
    }
    status_ = iterate(false);
    return status_;
  }

  Status status() const { return status_; }

  Scalar objective() const {
    Scalar v = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < columns_.size()) v += costs_[basis_[i]] * x_b_[i];
    return v;
  }

  /// Primal solution over the structural columns.
  std::vector<Scalar> solution() const {
    std::vector<Scalar> x(columns_.size(), Scalar(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < columns_.size()) x[basis_[i]] = x_b_[i];
    return x;
  }

  /// Simplex multipliers y with y^T A_j <= c_j at optimality, expressed for
  /// the rows as originally given (before sign normalisation).
  std::vector<Scalar> duals() const {
    std::vector<Scalar> y = multipliers(false);
    for (std::size_t i = 0; i < m_; ++i) y[i] *= row_sign_[i];
    return y;
  }

private:
  static constexpr std::size_t kArtificial = std::numeric_limits<std::size_t>::max() / 2;

  void apply_signs(Column& col) const {
    for (std::size_t i = 0; i < m_; ++i) col[i] *= row_sign_[i];
  }

  bool is_artificial(std::size_t j) const { return j >= kArtificial; }

  const Scalar& cost_of(std::size_t j, bool phase_one) const {
    static const Scalar zero(0), one(1);
    if (phase_one) return is_artificial(j) ? one : zero;
    return is_artificial(j) ? zero : costs_[j];
  }

  Column column_of(std::size_t j) const {
    if (!is_artificial(j)) return columns_[j];
    Column e(m_, Scalar(0));
    e[j - kArtificial] = Scalar(1);
    return e;
  }

  Column ftran(const Column& a) const {
    Column out(m_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) {
      Scalar s = 0;
      for (std::size_t k = 0; k < m_; ++k)
        if (a[k] != 0) s += binv_[i][k] * a[k];
      out[i] = s;
    }
    return out;
  }

  std::vector<Scalar> multipliers(bool phase_one) const {
    std::vector<Scalar> y(m_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) {
      const Scalar& cb = cost_of(basis_[i], phase_one);
      if (cb == 0) continue;
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_[i][k];
    }
    return y;
  }

  bool phase_one() {
    basis_.resize(m_);
    binv_.assign(m_, std::vector<Scalar>(m_, Scalar(0)));
    x_b_ = rhs_;
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = kArtificial + i;
      binv_[i][i] = Scalar(1);
    }
    status_ = iterate(true);
    if (status_ != Status::Optimal) return false;
    Scalar infeas = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (is_artificial(basis_[i])) infeas += x_b_[i];
    if (infeas > Traits::feas_tol() * Scalar(10)) {
      status_ = Status::Infeasible;
      return false;
    }
    drive_out_artificials();
    return true;
  }

  // Pivot zero-level artificials out of the basis where a structural
  // column allows it; rows where none does are redundant and stay inert.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (in_basis(j)) continue;
        const Column col = ftran(columns_[j]);
        if (Traits::abs(col[r]) > Traits::pivot_tol() * Scalar(1000)) {
          pivot(r, j, col);
          break;
        }
      }
    }
  }

  bool in_basis(std::size_t j) const { return std::find(basis_.begin(), basis_.end(), j) != basis_.end(); }

  void pivot(std::size_t r, std::size_t entering, const Column& col) {
    const Scalar p = col[r];
    for (std::size_t k = 0; k < m_; ++k) binv_[r][k] /= p;
    x_b_[r] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || col[i] == 0) continue;
      const Scalar f = col[i];
      for (std::size_t k = 0; k < m_; ++k) binv_[i][k] -= f * binv_[r][k];
      x_b_[i] -= f * x_b_[r];
    }
    basis_[r] = entering;
    ++pivots_since_refactor_;
  }

  // Recompute B^{-1} and x_B from scratch by Gauss-Jordan elimination.
  void refactor() {
    std::vector<std::vector<Scalar>> aug(m_, std::vector<Scalar>(2 * m_, Scalar(0)));
    for (std::size_t j = 0; j < m_; ++j) {
      const Column col = column_of(basis_[j]);
      for (std::size_t i = 0; i < m_; ++i) aug[i][j] = col[i];
    }
    for (std::size_t i = 0; i < m_; ++i) aug[i][m_ + i] = Scalar(1);
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t best = c;
      for (std::size_t i = c + 1; i < m_; ++i)
        if (Traits::abs(aug[i][c]) > Traits::abs(aug[best][c])) best = i;
      if (aug[best][c] == 0) return;  // keep the product-form inverse
      std::swap(aug[best], aug[c]);
      const Scalar p = aug[c][c];
      for (auto& v : aug[c]) v /= p;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == c || aug[i][c] == 0) continue;
        const Scalar f = aug[i][c];
        for (std::size_t k = 0; k < 2 * m_; ++k) aug[i][k] -= f * aug[c][k];
      }
    }
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < m_; ++k) binv_[i][k] = aug[i][m_ + k];
    x_b_ = ftran(rhs_);
    for (auto& v : x_b_)
      if (v < 0 && -v <= Traits::feas_tol()) v = 0;
    pivots_since_refactor_ = 0;
  }

  Status iterate(bool phase_one) {
    std::size_t degenerate_run = 0;
    for (std::size_t it = 0; it < iteration_limit_; ++it) {
      if constexpr (!Traits::exact) {
        if (pivots_since_refactor_ >= 40) refactor();
      }
      const std::vector<Scalar> y = multipliers(phase_one);
      const bool bland = Traits::exact || degenerate_run > 20;

      std::optional<std::size_t> entering;
      Scalar best = -Traits::cost_tol();
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (in_basis(j)) continue;
        Scalar rc = cost_of(j, phase_one);
        const Column& col = columns_[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (col[i] != 0) rc -= y[i] * col[i];
        if (rc < best) {
          entering = j;
          if (bland) break;
          best = rc;
        }
      }
      if (!entering) return Status::Optimal;

      const Column col = ftran(columns_[*entering]);
      std::optional<std::size_t> leave;
      Scalar ratio = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (col[i] <= Traits::pivot_tol()) continue;
        const Scalar r = x_b_[i] / col[i];
        if (!leave || r < ratio || (r == ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          ratio = r;
        }
      }
      if (!leave) return Status::Unbounded;
      degenerate_run = (ratio == 0) ? degenerate_run + 1 : 0;
      pivot(*leave, *entering, col);
      for (auto& v : x_b_)
        if (v < 0 && -v <= Traits::feas_tol()) v = 0;
    }
    return Status::IterationLimit;
  }

  std::size_t m_;
  std::vector<Column> columns_;
  std::vector<Scalar> costs_;
  std::vector<Scalar> rhs_;
  std::vector<Scalar> row_sign_;

  std::vector<std::size_t> basis_;
  std::vector<std::vector<Scalar>> binv_;
  std::vector<Scalar> x_b_;
  bool initialised_ = false;
  Status status_ = Status::IterationLimit;
  std::size_t iteration_limit_ = 20000;
  std::size_t pivots_since_refactor_ = 0;
};

}  // namespace anosov::lp
