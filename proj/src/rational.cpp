#include "anosov/rational.hpp"

#include <cctype>
#include <utility>

#include "anosov/error.hpp"

namespace anosov {

RationalMatrix RationalMatrix::identity(int dim) {
  RationalMatrix out(dim);
  for (int i = 0; i < dim; ++i) out(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  RationalMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const mpq_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < dim_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

RationalMatrix RationalMatrix::operator-() const {
  RationalMatrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

mpq_class RationalMatrix::determinant() const {
  RationalMatrix a = *this;
  mpq_class det = 1;
  for (int c = 0; c < dim_; ++c) {
    int piv = -1;
    for (int r = c; r < dim_; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < dim_; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < dim_; ++r) {
      if (a(r, c) == 0) continue;
      const mpq_class f = a(r, c) / a(c, c);
      for (int j = c; j < dim_; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix a = *this;
  RationalMatrix inv = identity(dim_);
  for (int c = 0; c < dim_; ++c) {
    int piv = -1;
    for (int r = c; r < dim_; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(ErrorCode::SingularGenerator, "matrix is not invertible");
    for (int j = 0; j < dim_; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    const mpq_class p = a(c, c);
    for (int j = 0; j < dim_; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < dim_; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const mpq_class f = a(r, c);
      for (int j = 0; j < dim_; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Matrix RationalMatrix::to_double() const {
  Matrix out(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(i, j) = (*this)(i, j).get_d();
  return out;
}

std::string RationalMatrix::key() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.get_str();
    out += ',';
  }
  return out;
}

mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational entry");
  const auto valid_int = [](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.find_first_of("+-") != std::string::npos)
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace anosov
