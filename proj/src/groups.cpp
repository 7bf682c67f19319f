#include "anosov/groups.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>

#include "anosov/error.hpp"

namespace anosov::groups {

namespace {

constexpr double kKeyQuantum = 1e-9;
constexpr double kAuditTol = 1e-12;

RationalMatrix canonical_sign(const RationalMatrix& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (m(i, j) != 0) return m(i, j) < 0 ? -m : m;
  return m;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void check_square(const Matrix& m, int dim) {
  if (m.rows() != dim || m.cols() != dim)
    throw Error(ErrorCode::ParseError, "generator is not " + std::to_string(dim) + "x" + std::to_string(dim));
}

}  // namespace

std::string exact_key(const RationalMatrix& m, bool projective) {
  return projective ? canonical_sign(m).key() : m.key();
}

std::string float_key(const Matrix& m, bool projective) {
  const double quantum = kKeyQuantum * std::max(1.0, max_abs(m));
  double sign = 1.0;
  if (projective) {
    for (Eigen::Index i = 0; i < m.size() && sign == 1.0; ++i) {
      const double v = m.data()[i];
      if (std::abs(v) > quantum) {
        if (v < 0) sign = -1.0;
        break;
      }
    }
  }
  std::string key;
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const long long q = std::llround(sign * m(i, j) / quantum);
      std::snprintf(buf, sizeof buf, "%lld,", q);
      key += buf;
    }
  return key;
}

GroupSpec make_spec(std::string name, std::vector<RationalMatrix> generators, bool projective) {
  if (generators.empty()) throw Error(ErrorCode::ParseError, "group has no generators");
  GroupSpec spec;
  spec.name = std::move(name);
  spec.dim = generators.front().dim();
  spec.projective = projective;
  std::vector<RationalMatrix> all;
  std::vector<RationalMatrix> all_inv;
  std::vector<std::string> keys;
  for (const auto& g : generators) {
    if (g.dim() != spec.dim) throw Error(ErrorCode::ParseError, "generators of different sizes");
    const mpq_class det = g.determinant();
    if (det == 0) throw Error(ErrorCode::SingularGenerator, "generator is singular");
    if (abs(det) != 1) throw Error(ErrorCode::DeterminantNotUnit, "generator has determinant " + det.get_str());
    all.push_back(g);
    all_inv.push_back(g.inverse());
    keys.push_back(exact_key(g, projective));
  }
  const std::size_t given = all.size();
  for (std::size_t i = 0; i < given; ++i) {
    const std::string inv_key = exact_key(all_inv[i], projective);
    if (std::find(keys.begin(), keys.end(), inv_key) == keys.end()) {
      all.push_back(all_inv[i]);
      all_inv.push_back(all[i]);
      keys.push_back(inv_key);
    }
  }
  spec.inverse_of.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string inv_key = exact_key(all_inv[i], projective);
    spec.inverse_of[i] = static_cast<int>(std::find(keys.begin(), keys.end(), inv_key) - keys.begin());
    spec.generators.push_back(all[i].to_double());
    spec.generator_inverses.push_back(all_inv[i].to_double());
  }
  spec.exact = std::move(all);
  spec.exact_inverses = std::move(all_inv);
  return spec;
}

GroupSpec make_spec(std::string name, std::vector<Matrix> generators, bool projective) {
  if (generators.empty()) throw Error(ErrorCode::ParseError, "group has no generators");
  GroupSpec spec;
  spec.name = std::move(name);
  spec.dim = static_cast<int>(generators.front().rows());
  spec.projective = projective;
  std::vector<Matrix> all;
  std::vector<Matrix> all_inv;
  std::vector<std::string> keys;
  for (const auto& g : generators) {
    check_square(g, spec.dim);
    Eigen::FullPivLU<Matrix> lu(g);
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularGenerator, "generator is singular");
    const double det = g.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-9)
      throw Error(ErrorCode::DeterminantNotUnit, "generator has determinant " + std::to_string(det));
    all.push_back(g);
    all_inv.push_back(lu.inverse());
    keys.push_back(float_key(g, projective));
  }
  const std::size_t given = all.size();
  for (std::size_t i = 0; i < given; ++i) {
    const std::string inv_key = float_key(all_inv[i], projective);
    if (std::find(keys.begin(), keys.end(), inv_key) == keys.end()) {
      all.push_back(all_inv[i]);
      all_inv.push_back(all[i]);
      keys.push_back(inv_key);
    }
  }
  spec.inverse_of.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string inv_key = float_key(all_inv[i], projective);
    spec.inverse_of[i] = static_cast<int>(std::find(keys.begin(), keys.end(), inv_key) - keys.begin());
  }
  spec.generators = std::move(all);
  spec.generator_inverses = std::move(all_inv);
  return spec;
}

GroupSpec parse_group(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "group document must be an object");
    const int dim = doc.at("dim").get<int>();
    const std::string name = doc.value("name", std::string("group"));
    const bool projective = doc.value("projective", false);
    const auto& gens = doc.at("generators");
    if (!gens.is_array() || gens.empty()) throw Error(ErrorCode::ParseError, "generators must be a nonempty array");
    bool exact = true;
    for (const auto& g : gens)
      for (const auto& row : g)
        for (const auto& e : row)
          if (!(e.is_string() || e.is_number_integer() ||
                (e.is_number_float() && std::floor(e.get<double>()) == e.get<double>())))
            exact = false;

    if (exact) {
      std::vector<RationalMatrix> out;
      for (const auto& g : gens) {
        if (!g.is_array() || static_cast<int>(g.size()) != dim) throw Error(ErrorCode::ParseError, "generator row count");
        RationalMatrix m(dim);
        for (int i = 0; i < dim; ++i) {
          const auto& row = g[static_cast<std::size_t>(i)];
          if (!row.is_array() || static_cast<int>(row.size()) != dim) throw Error(ErrorCode::ParseError, "generator column count");
          for (int j = 0; j < dim; ++j) {
            const auto& e = row[static_cast<std::size_t>(j)];
            if (e.is_string()) {
              m(i, j) = parse_rational(e.get<std::string>());
            } else {
              m(i, j) = mpq_class(mpz_class(std::to_string(static_cast<long long>(e.get<double>()))));
            }
          }
        }
        out.push_back(std::move(m));
      }
      return make_spec(name, std::move(out), projective);
    }
    std::vector<Matrix> out;
    for (const auto& g : gens) {
      if (!g.is_array() || static_cast<int>(g.size()) != dim) throw Error(ErrorCode::ParseError, "generator row count");
      Matrix m(dim, dim);
      for (int i = 0; i < dim; ++i) {
        const auto& row = g[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) throw Error(ErrorCode::ParseError, "generator column count");
        for (int j = 0; j < dim; ++j) {
          const auto& e = row[static_cast<std::size_t>(j)];
          m(i, j) = e.is_string() ? parse_rational(e.get<std::string>()).get_d() : e.get<double>();
        }
      }
      out.push_back(std::move(m));
    }
    return make_spec(name, std::move(out), projective);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

std::optional<std::size_t> WordBall::find(const std::string& key) const {
  const auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::string WordBall::key_of(std::size_t i) const {
  return spec.rational() ? exact_key(exact[i], spec.projective) : float_key(elements[i].matrix, spec.projective);
}

std::size_t default_ball_cap() {
  if (const char* env = std::getenv("ANOSOV_CAP")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

WordBall word_ball(const GroupSpec& spec, int radius, std::optional<std::size_t> cap) {
  if (radius < 0) throw Error(ErrorCode::RadiusTooSmall, "negative radius");
  const std::size_t limit = cap.value_or(default_ball_cap());
  const bool exact = spec.rational();
  const int d = spec.dim;

  WordBall ball;
  ball.spec = spec;
  ball.radius = radius;
  ball.elements.push_back(GroupElement{Matrix::Identity(d, d), Matrix::Identity(d, d), {}, 0});
  if (exact) {
    ball.exact.push_back(RationalMatrix::identity(d));
    ball.exact_inverse.push_back(RationalMatrix::identity(d));
  }
  ball.index.emplace(ball.key_of(0), 0);
  ball.shell_begin = {0, 1};
  ball.shell_sizes = {1};

  for (int len = 1; len <= radius; ++len) {
    const std::size_t lo = ball.shell_begin[static_cast<std::size_t>(len - 1)];
    const std::size_t hi = ball.shell_begin[static_cast<std::size_t>(len)];
    for (std::size_t e = lo; e < hi; ++e) {
      for (std::size_t s = 0; s < spec.size(); ++s) {
        GroupElement next;
        RationalMatrix next_exact, next_exact_inv;
        std::string key;
        if (exact) {
          next_exact = ball.exact[e] * (*spec.exact)[s];
          key = exact_key(next_exact, spec.projective);
          if (ball.index.count(key)) continue;
          next_exact_inv = (*spec.exact_inverses)[s] * ball.exact_inverse[e];
          next.matrix = next_exact.to_double();
          next.inverse = next_exact_inv.to_double();
        } else {
          next.matrix = ball.elements[e].matrix * spec.generators[s];
          key = float_key(next.matrix, spec.projective);
          if (const auto hit = ball.index.find(key); hit != ball.index.end()) {
            const Matrix& other = ball.elements[hit->second].matrix;
            const double scale = std::max(1.0, max_abs(other));
            double diff = (other - next.matrix).cwiseAbs().maxCoeff();
            if (spec.projective) diff = std::min(diff, (other + next.matrix).cwiseAbs().maxCoeff());
            if (diff <= kAuditTol * scale) continue;
            key += "#" + std::to_string(ball.elements.size());  // audit rejected the merge
          }
          next.inverse = spec.generator_inverses[s] * ball.elements[e].inverse;
        }
        next.word = ball.elements[e].word;
        next.word.push_back(static_cast<int>(s));
        next.length = len;
        ball.index.emplace(std::move(key), ball.elements.size());
        ball.elements.push_back(std::move(next));
        if (exact) {
          ball.exact.push_back(std::move(next_exact));
          ball.exact_inverse.push_back(std::move(next_exact_inv));
        }
        if (ball.elements.size() > limit)
          throw Error(ErrorCode::BallTooLarge, "word ball exceeds " + std::to_string(limit) + " elements");
      }
    }
    ball.shell_begin.push_back(ball.elements.size());
    ball.shell_sizes.push_back(ball.elements.size() - hi);
  }
  return ball;
}

std::vector<Triple> geodesic_triples(const WordBall& ball, int depth) {
  if (depth < 1 || 2 * depth > ball.radius)
    throw Error(ErrorCode::RadiusTooSmall, "triples of half-length " + std::to_string(depth) + " need radius >= " +
                                               std::to_string(2 * depth));
  const std::size_t lo = ball.shell_begin[static_cast<std::size_t>(depth)];
  const std::size_t hi = ball.shell_begin[static_cast<std::size_t>(depth + 1)];
  const bool exact = ball.spec.rational();
  std::vector<Triple> out;
  for (std::size_t x = lo; x < hi; ++x) {
    for (std::size_t z = lo; z < hi; ++z) {
      std::string key;
      if (exact) {
        key = exact_key(ball.exact_inverse[x] * ball.exact[z], ball.spec.projective);
      } else {
        key = float_key(ball.elements[x].inverse * ball.elements[z].matrix, ball.spec.projective);
      }
      const auto hit = ball.find(key);
      if (hit && ball.elements[*hit].length == 2 * depth) out.push_back({x, z});
    }
  }
  return out;
}

Matrix word_matrix(const GroupSpec& spec, const std::vector<int>& word) {
  Matrix m = Matrix::Identity(spec.dim, spec.dim);
  for (int s : word) m = m * spec.generators[static_cast<std::size_t>(s)];
  return m;
}

namespace {

// Coefficients of the product of two polynomials in (x, y) stored by the
// power of y.
template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class T, class Get>
std::vector<std::vector<T>> sym_power_columns(Get get, int k) {
  // g maps x to g00 x + g10 y and y to g01 x + g11 y.
  const std::vector<T> gx{get(0, 0), get(1, 0)};
  const std::vector<T> gy{get(0, 1), get(1, 1)};
  std::vector<std::vector<T>> cols;
  for (int i = 0; i <= k; ++i) {
    std::vector<T> p{T(1)};
    for (int a = 0; a < k - i; ++a) p = poly_mul(p, gx);
    for (int b = 0; b < i; ++b) p = poly_mul(p, gy);
    cols.push_back(std::move(p));
  }
  return cols;
}

}  // namespace

Matrix symmetric_power(const Matrix& g, int k) {
  if (g.rows() != 2 || g.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "symmetric power needs a 2x2 matrix");
  const auto cols = sym_power_columns<double>([&](int i, int j) { return g(i, j); }, k);
  Matrix out(k + 1, k + 1);
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i <= k; ++i) out(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return out;
}

RationalMatrix symmetric_power(const RationalMatrix& g, int k) {
  if (g.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "symmetric power needs a 2x2 matrix");
  const auto cols = sym_power_columns<mpq_class>([&](int i, int j) { return g(i, j); }, k);
  RationalMatrix out(k + 1);
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i <= k; ++i) out(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return out;
}

}  // namespace anosov::groups
