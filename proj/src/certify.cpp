#include "anosov/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "anosov/error.hpp"

namespace anosov::certify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_radius(const WordBall& ball, int minimum) {
  if (ball.radius < minimum)
    throw Error(ErrorCode::RadiusTooSmall, "ball radius " + std::to_string(ball.radius) + " below " + std::to_string(minimum));
}

std::size_t shell_begin(const WordBall& ball, int len) { return ball.shell_begin[static_cast<std::size_t>(len)]; }
std::size_t shell_end(const WordBall& ball, int len) { return ball.shell_begin[static_cast<std::size_t>(len + 1)]; }

// Union-find over sample indices.
struct Components {
  std::vector<std::size_t> parent;
  explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t root(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[root(a)] = root(b); }
};

double projective_angle(const Vector& a, const Vector& b) {
  return std::acos(std::min(1.0, std::abs(a.normalized().dot(b.normalized()))));
}

}  // namespace

CartanVector cartan_projection(const groups::GroupElement& g, const SpdPoint& o) {
  const Matrix m = o.factor_inverse() * g.matrix * o.factor();
  const Matrix m_inv = o.factor_inverse() * g.inverse * o.factor();
  Vector v = linalg::log_singular_values(m, m_inv);
  v.array() -= v.mean();
  return CartanVector{v};
}

SlopeFit fit_support_line(const std::vector<double>& m) {
  SlopeFit fit;
  if (m.size() < 3) return fit;
  double a = kInf;
  for (std::size_t L = 2; L < m.size(); ++L) a = std::min(a, (m[L] - m[1]) / static_cast<double>(L - 1));
  fit.a_hat = std::max(0.0, a);
  double b = -kInf;
  for (std::size_t L = 1; L < m.size(); ++L) b = std::max(b, fit.a_hat * static_cast<double>(L) - m[L]);
  fit.b_hat = b;
  return fit;
}

AnosovEstimate estimate_anosov(const WordBall& ball, const SpdPoint& o, int k) {
  const int d = ball.spec.dim;
  if (k < 1 || k >= d) throw Error(ErrorCode::DimensionMismatch, "gap index must satisfy 1 <= k < d");
  require_radius(ball, 3);
  AnosovEstimate est;
  est.k = k;
  est.per_shell_min.assign(static_cast<std::size_t>(ball.radius + 1), kInf);
  est.per_shell_min[0] = 0.0;
  for (int L = 1; L <= ball.radius; ++L) {
    double& slot = est.per_shell_min[static_cast<std::size_t>(L)];
    for (std::size_t i = shell_begin(ball, L); i < shell_end(ball, L); ++i) {
      const Vector mu = cartan_projection(ball.elements[i], o).entries;
      slot = std::min(slot, std::max(0.0, mu[k - 1] - mu[k]));
    }
  }
  const auto fit = fit_support_line(est.per_shell_min);
  est.a_hat = fit.a_hat;
  est.b_hat = fit.b_hat;
  return est;
}

LimitConeSample sample_limit_cone(const WordBall& ball, const SpdPoint& o, double cutoff, double epsilon) {
  LimitConeSample s;
  s.cutoff = cutoff;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    const CartanVector mu = cartan_projection(ball.elements[i], o);
    const double nrm = mu.norm();
    if (nrm < cutoff || nrm == 0.0) continue;
    s.vectors.push_back(mu.entries / nrm);
    s.lengths.push_back(ball.elements[i].length);
  }
  if (s.vectors.empty()) throw Error(ErrorCode::EmptySample, "no Cartan vector passes the cutoff");

  // Collapse numerically coincident directions before the quadratic passes.
  std::map<std::vector<long long>, std::size_t> seen;
  std::vector<Vector> distinct;
  for (const auto& v : s.vectors) {
    std::vector<long long> key(static_cast<std::size_t>(v.size()));
    for (Eigen::Index j = 0; j < v.size(); ++j) key[static_cast<std::size_t>(j)] = std::llround(v[j] * 1e9);
    if (seen.emplace(key, distinct.size()).second) distinct.push_back(v);
  }

  double max_nn = 0.0;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    double nn = kInf;
    for (std::size_t j = 0; j < distinct.size(); ++j)
      if (j != i) nn = std::min(nn, (distinct[i] - distinct[j]).norm());
    if (std::isfinite(nn)) max_nn = std::max(max_nn, nn);
  }
  s.epsilon = epsilon > 0.0 ? epsilon : std::max(2.0 * max_nn, 1e-6);

  Components comp(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j)
      if ((distinct[i] - distinct[j]).norm() <= s.epsilon) comp.join(i, j);
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < distinct.size(); ++i) roots.push_back(comp.root(i));
  std::sort(roots.begin(), roots.end());
  s.components = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
  s.epsilon_graph_connected = s.components == 1;

  Vector mean = Vector::Zero(s.vectors.front().size());
  for (const auto& v : s.vectors) mean += v;
  if (mean.norm() > 0) mean.normalize();
  for (const auto& v : s.vectors) s.spread = std::max(s.spread, (v - mean).norm());
  return s;
}

double wall_distance(const OmegaForm& w, const Vector& unit) {
  return symspace::omega_min_abs(w, CartanVector{unit}) / w.coefficients().norm();
}

UndistortedEstimate estimate_undistorted(const WordBall& ball, const SpdPoint& o, const OmegaForm& w) {
  require_radius(ball, 3);
  if (w.dim() != ball.spec.dim) throw Error(ErrorCode::DimensionMismatch, "omega form and group dimensions differ");
  UndistortedEstimate est;
  est.omega.assign(w.coefficients().data(), w.coefficients().data() + w.dim());
  est.radius = ball.radius;
  est.per_shell_min.assign(static_cast<std::size_t>(ball.radius + 1), kInf);
  est.per_shell_min[0] = 0.0;
  double max_norm = 0.0;
  for (int L = 1; L <= ball.radius; ++L) {
    double& slot = est.per_shell_min[static_cast<std::size_t>(L)];
    for (std::size_t i = shell_begin(ball, L); i < shell_end(ball, L); ++i) {
      const CartanVector mu = cartan_projection(ball.elements[i], o);
      slot = std::min(slot, symspace::omega_min_abs(w, mu));
      max_norm = std::max(max_norm, mu.norm());
    }
  }
  const auto fit = fit_support_line(est.per_shell_min);
  est.a_hat = fit.a_hat;
  est.b_hat = fit.b_hat;

  if (max_norm > 0.0) {
    const auto cone = sample_limit_cone(ball, o, 0.5 * max_norm);
    double margin = kInf;
    for (const auto& u : cone.vectors) margin = std::min(margin, wall_distance(w, u));
    est.wall_margin = std::clamp(margin, 0.0, 1.0);
  }
  est.c_constant = est.wall_margin;
  return est;
}

FlagSample sample_limit_flags(const WordBall& ball, int n) {
  const int d = ball.spec.dim;
  if (d != 2 * n) throw Error(ErrorCode::DimensionMismatch, "flag sampling needs d = 2n");
  constexpr double kGapThreshold = 10.0;
  FlagSample fs;
  fs.n = n;
  fs.gap = kInf;
  std::map<std::vector<long long>, std::size_t> seen;
  for (int L = std::max(1, ball.radius - 1); L <= ball.radius; ++L) {
    for (std::size_t i = shell_begin(ball, L); i < shell_end(ball, L); ++i) {
      const auto svd = linalg::jacobi_svd(ball.elements[i].matrix);
      const double gap = svd.s[n - 1] / std::max(svd.s[n], 1e-300);
      if (!(gap > kGapThreshold)) continue;
      const Matrix e = svd.u.leftCols(n);
      // The projector E E^T does not depend on the chosen basis.
      const Matrix proj = e * e.transpose();
      std::vector<long long> key(static_cast<std::size_t>(proj.size()));
      for (Eigen::Index j = 0; j < proj.size(); ++j) key[static_cast<std::size_t>(j)] = std::llround(proj.data()[j] * 1e6);
      if (!seen.emplace(key, fs.subspaces.size()).second) continue;
      fs.subspaces.push_back(e);
      fs.sources.push_back(i);
      fs.gap = std::min(fs.gap, gap);
    }
  }
  if (fs.subspaces.empty()) throw Error(ErrorCode::NoGap, "no element has sigma_n / sigma_{n+1} > 10");
  return fs;
}

LimitDirections sample_limit_directions(const WordBall& ball, int shell, std::size_t count) {
  if (shell < 1 || shell > ball.radius) throw Error(ErrorCode::RadiusTooSmall, "shell outside the ball");
  std::vector<Vector> dirs, normals;
  std::map<std::vector<long long>, std::size_t> seen;
  for (std::size_t i = shell_begin(ball, shell); i < shell_end(ball, shell); ++i) {
    const auto svd = linalg::jacobi_svd(ball.elements[i].matrix);
    const int d = static_cast<int>(svd.s.size());
    if (!(svd.s[0] > 10.0 * svd.s[1]) || !(svd.s[d - 2] > 10.0 * svd.s[d - 1])) continue;
    Vector v = svd.u.col(0);
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (std::abs(v[j]) > 1e-12) {
        if (v[j] < 0) v = -v;
        break;
      }
    std::vector<long long> key(static_cast<std::size_t>(v.size()));
    for (Eigen::Index j = 0; j < v.size(); ++j) key[static_cast<std::size_t>(j)] = std::llround(v[j] * 1e9);
    if (!seen.emplace(key, dirs.size()).second) continue;
    dirs.push_back(v);
    normals.push_back(svd.u.col(d - 1));
  }
  if (dirs.empty()) throw Error(ErrorCode::NoGap, "no element in the shell has a projective gap");

  LimitDirections out;
  std::vector<double> dist(dirs.size(), kInf);
  std::size_t next = 0;
  while (out.directions.size() < std::min(count, dirs.size())) {
    out.directions.push_back(dirs[next]);
    out.hyperplane_normals.push_back(normals[next]);
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      dist[j] = std::min(dist[j], projective_angle(dirs[j], dirs[next]));
      if (dist[j] > best_d) {
        best_d = dist[j];
        best = j;
      }
    }
    next = best;
  }
  return out;
}

std::string to_string(Mode m) { return m == Mode::Flag ? "flag" : "satake"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::pair<double, double> pencil_minimum(const Matrix& a1, const Matrix& a2) {
  const auto f = [&](double t) { return linalg::max_eigenpair(t * a1 + (1.0 - t) * a2).first; };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = 1.0;
  double c = hi - phi * (hi - lo), dd = lo + phi * (hi - lo);
  double fc = f(c), fd = f(dd);
  for (int it = 0; it < 90 && hi - lo > 1e-13; ++it) {
    if (fc <= fd) {
      hi = dd;
      dd = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = dd;
      fc = fd;
      dd = lo + phi * (hi - lo);
      fd = f(dd);
    }
  }
  std::pair<double, double> best{0.5 * (lo + hi), f(0.5 * (lo + hi))};
  for (double t : {0.0, 1.0, 0.5}) {
    const double v = f(t);
    if (v < best.second) best = {t, v};
  }
  return best;
}

namespace {

// Largest s-mixture value min(Tr(A1 Y), Tr(A2 Y)) over Y = s P + (1-s) Q.
std::pair<double, double> best_mixture(const Matrix& a1, const Matrix& a2, const Matrix& p, const Matrix& q) {
  const auto tr = [](const Matrix& a, const Matrix& y) { return (a.array() * y.array()).sum(); };
  const double p1 = tr(a1, p), p2 = tr(a2, p), q1 = tr(a1, q), q2 = tr(a2, q);
  const auto value = [&](double s) { return std::min(s * p1 + (1 - s) * q1, s * p2 + (1 - s) * q2); };
  std::pair<double, double> best{1.0, value(1.0)};
  if (value(0.0) > best.second) best = {0.0, value(0.0)};
  const double denom = (p1 - q1) - (p2 - q2);
  if (denom != 0.0) {
    const double s = (q2 - q1) / denom;
    if (s > 0.0 && s < 1.0 && value(s) > best.second) best = {s, value(s)};
  }
  return best;
}

std::optional<Matrix> refute(const Matrix& a1, const Matrix& a2, double t_star, Mode mode, std::mt19937_64& rng,
                             int samples) {
  const double scale = std::max(a1.cwiseAbs().maxCoeff(), a2.cwiseAbs().maxCoeff());
  const double tol = -1e-12 * scale;
  std::vector<Vector> cands;
  for (double dt : {0.0, 1e-3, -1e-3, 1e-5, -1e-5, 1e-7, -1e-7}) {
    const double t = std::clamp(t_star + dt, 0.0, 1.0);
    const auto eig = linalg::jacobi_eigen(t * a1 + (1.0 - t) * a2);
    cands.push_back(eig.vectors.col(0));
  }
  for (double t : {0.0, 1.0}) cands.push_back(linalg::max_eigenpair(t * a1 + (1.0 - t) * a2).second);

  for (const auto& u : cands) {
    if (u.dot(a1 * u) >= tol && u.dot(a2 * u) >= tol) return Matrix(u * u.transpose());
  }
  if (mode == Mode::Satake) {
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        const Matrix p = cands[i] * cands[i].transpose();
        const Matrix q = cands[j] * cands[j].transpose();
        const auto [s, v] = best_mixture(a1, a2, p, q);
        if (v >= tol) return Matrix(s * p + (1 - s) * q);
      }
    return std::nullopt;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = static_cast<int>(a1.rows());
  Vector v(d);
  for (int k = 0; k < samples; ++k) {
    for (int j = 0; j < d; ++j) v[j] = normal(rng);
    v.normalize();
    if (v.dot(a1 * v) >= tol && v.dot(a2 * v) >= tol) return Matrix(v * v.transpose());
  }
  return std::nullopt;
}

}  // namespace

DisjointnessCertificate certify_disjoint_half_spaces(const WordBall& ball, const SpdPoint& o, int depth, Mode mode,
                                                     std::uint64_t seed, int refutation_samples) {
  const auto triples = groups::geodesic_triples(ball, depth);
  DisjointnessCertificate cert;
  cert.depth = depth;
  cert.mode = mode;
  cert.worst_lambda = -kInf;
  std::mt19937_64 rng(seed);
  bool all_certified = !triples.empty();
  for (const auto& tr : triples) {
    const auto& gx = ball.elements[tr.x];
    const auto& gz = ball.elements[tr.z];
    const Matrix a1 = symspace::half_space(symspace::act(gx.matrix, gx.inverse, o), o).functional;
    const Matrix a2 = symspace::half_space(symspace::act(gz.matrix, gz.inverse, o), o).functional;
    const auto [t, lam] = pencil_minimum(a1, a2);
    TripleRecord rec{tr.x, tr.z, t, lam, Verdict::Inconclusive};
    if (lam < -1e-9) {
      rec.verdict = Verdict::Certified;
    } else {
      all_certified = false;
      if (auto w = refute(a1, a2, t, mode, rng, refutation_samples)) {
        rec.verdict = Verdict::Refuted;
        if (!cert.witness) {
          cert.witness = *w;
          cert.witness_triple = cert.triples.size();
        }
      }
    }
    cert.worst_lambda = std::max(cert.worst_lambda, lam);
    cert.triples.push_back(rec);
  }
  if (all_certified) {
    cert.verdict = Verdict::Certified;
  } else if (cert.witness) {
    cert.verdict = Verdict::Refuted;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

double convexity_epsilon(const std::vector<double>& s) {
  double eps = kInf;
  for (std::size_t n = 0; n + 2 < s.size(); ++n) {
    const double a = s[n + 1] - s[n];
    const double b = s[n + 2] - s[n + 1];
    eps = std::min(eps, std::max(-a, b));
  }
  return std::max(0.0, eps);
}

ConvexityProfile convexity_profile(const WordBall& ball, const SpdPoint& o, const Vector& wv,
                                   const std::vector<int>& word_path, int stride) {
  if (stride < 1) throw Error(ErrorCode::NotGeodesic, "stride must be positive");
  const auto& spec = ball.spec;
  std::vector<std::size_t> prefix_elements{0};
  Matrix m = Matrix::Identity(spec.dim, spec.dim);
  RationalMatrix mx = RationalMatrix::identity(spec.dim);
  for (std::size_t i = 0; i < word_path.size(); ++i) {
    const int s = word_path[i];
    if (s < 0 || static_cast<std::size_t>(s) >= spec.size()) throw Error(ErrorCode::NotGeodesic, "unknown generator index");
    std::string key;
    if (spec.rational()) {
      mx = mx * (*spec.exact)[static_cast<std::size_t>(s)];
      key = groups::exact_key(mx, spec.projective);
    } else {
      m = m * spec.generators[static_cast<std::size_t>(s)];
      key = groups::float_key(m, spec.projective);
    }
    const auto hit = ball.find(key);
    if (!hit || ball.elements[*hit].length != static_cast<int>(i + 1))
      throw Error(ErrorCode::NotGeodesic, "prefix of length " + std::to_string(i + 1) + " is not geodesic in the ball");
    prefix_elements.push_back(*hit);
  }

  ConvexityProfile prof;
  const auto value_at = [&](std::size_t idx) {
    const auto& g = ball.elements[idx];
    return symspace::busemann_rank_one(wv, symspace::act(g.matrix, g.inverse, o), o);
  };
  for (std::size_t k = 0; k < prefix_elements.size(); k += static_cast<std::size_t>(stride))
    prof.values.push_back(value_at(prefix_elements[k]));
  if (prof.values.size() < 3) throw Error(ErrorCode::NotGeodesic, "path too short for the stride");
  prof.epsilon = convexity_epsilon(prof.values);
  for (std::size_t n = 2; (prof.values.size() - 1) / n >= 2; ++n) {
    std::vector<double> sub;
    for (std::size_t k = 0; k < prof.values.size(); k += n) sub.push_back(prof.values[k]);
    const double e = convexity_epsilon(sub);
    prof.coarsened.emplace_back(static_cast<int>(n), e);
    if (std::isfinite(prof.epsilon) && e < static_cast<double>(n) * prof.epsilon - 1e-9) prof.coarsening_law_holds = false;
  }
  return prof;
}

}  // namespace anosov::certify
