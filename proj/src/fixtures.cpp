#include <cmath>
#include <numbers>
#include <sstream>

#include "anosov/error.hpp"
#include "anosov/groups.hpp"

namespace anosov::groups {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string param(const std::vector<std::string>& params, std::size_t i, const char* fallback) {
  return i < params.size() && !params[i].empty() ? params[i] : std::string(fallback);
}

double parse_real(const std::string& s) {
  if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "malformed number '" + s + "'");
  return v;
}

bool is_rational_text(const std::string& s) {
  try {
    parse_rational(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

RationalMatrix rational_from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long v : row) m(i, j++) = mpq_class(v);
    ++i;
  }
  return m;
}

mpq_class rational_power(const mpq_class& base, int e) {
  mpq_class out = 1;
  const mpq_class b = e >= 0 ? base : mpq_class(1) / base;
  for (int i = 0; i < std::abs(e); ++i) out *= b;
  return out;
}

GroupSpec cyclic_diagonal(const std::vector<std::string>& params) {
  const std::string lambda = param(params, 0, "2");
  std::vector<int> profile{1, -1};
  if (params.size() > 1 && !params[1].empty()) {
    profile.clear();
    for (const auto& p : split(params[1], ',')) profile.push_back(static_cast<int>(parse_real(p)));
  }
  int sum = 0;
  for (int p : profile) sum += p;
  if (sum != 0 || profile.size() < 2) throw Error(ErrorCode::ParseError, "cyclic-diagonal profile must have zero sum");
  const int d = static_cast<int>(profile.size());
  if (is_rational_text(lambda)) {
    const mpq_class l = parse_rational(lambda);
    RationalMatrix g(d);
    for (int i = 0; i < d; ++i) g(i, i) = rational_power(l, profile[static_cast<std::size_t>(i)]);
    return make_spec("cyclic-diagonal", {g});
  }
  const double l = parse_real(lambda);
  Matrix g = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) g(i, i) = std::pow(l, profile[static_cast<std::size_t>(i)]);
  return make_spec("cyclic-diagonal", std::vector<Matrix>{g});
}

// Angular position of a line in RP^1, in [0, pi).
double line_angle(const Vector& v) {
  double a = std::atan2(v[1], v[0]);
  if (a < 0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

double rp1_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

// Checks the ping-pong configuration on RP^1: each generator maps the
// complement of the neighbourhood of its repelling point into the
// neighbourhood of its attracting point, and the neighbourhoods are disjoint.
void validate_ping_pong(const GroupSpec& spec) {
  std::vector<double> attract, repel;
  for (std::size_t s = 0; s < spec.size(); ++s) {
    const Eigen::EigenSolver<Matrix> es(spec.generators[s]);
    const auto vals = es.eigenvalues();
    const int top = std::abs(vals[0]) >= std::abs(vals[1]) ? 0 : 1;
    if (std::abs(std::abs(vals[0]) - std::abs(vals[1])) < 1e-9 || std::abs(vals[0].imag()) > 1e-12)
      throw Error(ErrorCode::PingPongFailed, "generator is not hyperbolic");
    attract.push_back(line_angle(es.eigenvectors().col(top).real()));
    repel.push_back(line_angle(es.eigenvectors().col(1 - top).real()));
  }
  std::vector<double> points = attract;
  points.insert(points.end(), repel.begin(), repel.end());
  double sep = std::numbers::pi;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      // a generator and its inverse share fixed points with roles swapped
      const double dist = rp1_distance(points[i], points[j]);
      if (dist > 1e-12) sep = std::min(sep, dist);
    }
  const double r = 0.5 * sep * 0.999;
  constexpr int kSamples = 720;
  for (std::size_t s = 0; s < spec.size(); ++s) {
    for (int k = 0; k < kSamples; ++k) {
      const double theta = std::numbers::pi * k / kSamples;
      if (rp1_distance(theta, repel[s]) < r) continue;
      Vector v(2);
      v << std::cos(theta), std::sin(theta);
      const double image = line_angle(spec.generators[s] * v);
      if (rp1_distance(image, attract[s]) >= r)
        throw Error(ErrorCode::PingPongFailed, "generator " + std::to_string(s) + " fails the ping-pong test");
    }
  }
}

GroupSpec schottky_sl2(const std::vector<std::string>& params) {
  const std::string lambda = param(params, 0, "3");
  const double angle_deg = parse_real(param(params, 1, "45"));
  GroupSpec spec;
  if (is_rational_text(lambda) && angle_deg == 45.0) {
    const mpq_class l = parse_rational(lambda);
    RationalMatrix a(2);
    a(0, 0) = l;
    a(1, 1) = 1 / l;
    const RationalMatrix p = rational_from_rows({{1, -1}, {1, 1}});
    spec = make_spec("schottky-sl2", {a, p * a * p.inverse()});
  } else {
    const double l = parse_real(lambda);
    const double t = std::tan(angle_deg * std::numbers::pi / 180.0);
    Matrix a(2, 2), p(2, 2);
    a << l, 0, 0, 1 / l;
    p << 1, -t, t, 1;
    spec = make_spec("schottky-sl2", std::vector<Matrix>{a, p * a * p.inverse()});
  }
  validate_ping_pong(spec);
  return spec;
}

GroupSpec sl3_diagonal(const std::vector<std::string>& params) {
  const std::string lambda = param(params, 0, "2");
  if (is_rational_text(lambda)) {
    const mpq_class l = parse_rational(lambda);
    RationalMatrix g(3);
    g(0, 0) = l;
    g(1, 1) = 1;
    g(2, 2) = 1 / l;
    return make_spec("sl3-diagonal", {g});
  }
  const double l = parse_real(lambda);
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = l;
  g(1, 1) = 1;
  g(2, 2) = 1 / l;
  return make_spec("sl3-diagonal", std::vector<Matrix>{g});
}

GroupSpec inner_spec(const std::vector<std::string>& params, std::size_t from, const char* fallback) {
  if (params.size() <= from) return fixture_from_string(std::string("fx:") + fallback);
  std::string text = "fx";
  for (std::size_t i = from; i < params.size(); ++i) text += ":" + params[i];
  return fixture_from_string(text);
}

// Only one of each generator/inverse pair is transformed; make_spec re-adds inverses.
std::vector<std::size_t> originals(const GroupSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (static_cast<std::size_t>(spec.inverse_of[i]) >= i) out.push_back(i);
  return out;
}

GroupSpec block_embed_sl4(const std::vector<std::string>& params) {
  const GroupSpec inner = inner_spec(params, 0, "schottky-sl2");
  if (inner.dim != 2) throw Error(ErrorCode::DimensionMismatch, "block-embed-sl4 needs a 2x2 inner group");
  if (inner.rational()) {
    std::vector<RationalMatrix> gens;
    for (std::size_t i : originals(inner)) {
      const auto& g = (*inner.exact)[i];
      RationalMatrix b(4);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) b(r, c) = b(r + 2, c + 2) = g(r, c);
      gens.push_back(b);
    }
    return make_spec("block-embed-sl4(" + inner.name + ")", gens);
  }
  std::vector<Matrix> gens;
  for (std::size_t i : originals(inner)) {
    Matrix b = Matrix::Zero(4, 4);
    b.topLeftCorner(2, 2) = inner.generators[i];
    b.bottomRightCorner(2, 2) = inner.generators[i];
    gens.push_back(b);
  }
  return make_spec("block-embed-sl4(" + inner.name + ")", gens);
}

GroupSpec symmetric_power_fixture(const std::vector<std::string>& params) {
  const int k = static_cast<int>(parse_real(param(params, 0, "2")));
  if (k < 1) throw Error(ErrorCode::ParseError, "symmetric power needs k >= 1");
  const GroupSpec inner = inner_spec(params, 1, "schottky-sl2");
  if (inner.dim != 2) throw Error(ErrorCode::DimensionMismatch, "symmetric-power needs a 2x2 inner group");
  const std::string name = "symmetric-power" + std::to_string(k) + "(" + inner.name + ")";
  if (inner.rational()) {
    std::vector<RationalMatrix> gens;
    for (std::size_t i : originals(inner)) gens.push_back(symmetric_power((*inner.exact)[i], k));
    return make_spec(name, gens);
  }
  std::vector<Matrix> gens;
  for (std::size_t i : originals(inner)) gens.push_back(symmetric_power(inner.generators[i], k));
  return make_spec(name, gens);
}

GroupSpec so21_lattice() {
  // Reflections generating the integral automorphs of x^2 + y^2 - z^2.
  const RationalMatrix r1 = rational_from_rows({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const RationalMatrix r2 = rational_from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  const RationalMatrix r3 = rational_from_rows({{-1, -2, 2}, {-2, -1, 2}, {-2, -2, 3}});
  const RationalMatrix q = rational_from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  for (const auto* g : {&r1, &r2, &r3})
    if (!(g->transpose() * q * *g == q)) throw Error(ErrorCode::ParseError, "lattice generator does not preserve the form");
  return make_spec("so21-integral-lattice", {r1, r2, r3});
}

GroupSpec parabolic_sl2() {
  return make_spec("parabolic-sl2", {rational_from_rows({{1, 1}, {0, 1}})});
}

}  // namespace

Matrix so21_form() {
  Matrix q = Matrix::Identity(3, 3);
  q(2, 2) = -1;
  return q;
}

GroupSpec fixture(std::string_view name, const std::vector<std::string>& params) {
  if (name == "cyclic-diagonal") return cyclic_diagonal(params);
  if (name == "schottky-sl2") return schottky_sl2(params);
  if (name == "so21-integral-lattice") return so21_lattice();
  if (name == "sl3-diagonal") return sl3_diagonal(params);
  if (name == "block-embed-sl4") return block_embed_sl4(params);
  if (name == "parabolic-sl2") return parabolic_sl2();
  if (name == "symmetric-power") return symmetric_power_fixture(params);
  throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
}

GroupSpec fixture_from_string(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() < 2 || parts[0] != "fx") throw Error(ErrorCode::UnknownFixture, "fixture must look like fx:name:params");
  const std::string name = parts[1];
  parts.erase(parts.begin(), parts.begin() + 2);
  return fixture(name, parts);
}

}  // namespace anosov::groups
