#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "anosov/linalg.hpp"

namespace anosov {

/// Square matrix of exact rationals, row-major.
class RationalMatrix {
public:
  RationalMatrix() = default;
  explicit RationalMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim * dim), mpq_class(0)) {}

  static RationalMatrix identity(int dim);

  int dim() const { return dim_; }
  mpq_class& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }
  const mpq_class& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }

  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator-() const;
  bool operator==(const RationalMatrix& other) const { return dim_ == other.dim_ && entries_ == other.entries_; }

  RationalMatrix transpose() const;
  mpq_class determinant() const;
  /// Exact inverse; the caller guarantees invertibility.
  RationalMatrix inverse() const;
  Matrix to_double() const;

  /// Canonical text key; equal matrices give equal keys.
  std::string key() const;

private:
  int dim_ = 0;
  std::vector<mpq_class> entries_;
};

/// Parses "p", "p/q" or "-p/q". Throws Error(ParseError) otherwise.
mpq_class parse_rational(std::string_view text);

}  // namespace anosov
