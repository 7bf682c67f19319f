#include "anosov/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "anosov/error.hpp"
#include "anosov/lp.hpp"

namespace anosov::domains {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRedundantTol = 1e-9;
constexpr double kPsdTol = 1e-8;
constexpr double kWitnessTol = 1e-8;
constexpr double kInteriorEig = 1e-6;

double trace_pair(const Matrix& a, const Matrix& z) { return (a.array() * z.array()).sum(); }

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector rank_one_pair_vec(const Vector& v) { return linalg::pair_vec(v * v.transpose()); }

// Mixes z toward I/d just enough that every `others` value reaches `floor`.
// Returns the mixing weight, or a negative number when no weight in [0,1) works.
double mix_weight(const Matrix& z, const std::vector<const Matrix*>& others, double floor) {
  const int d = static_cast<int>(z.rows());
  double s = 0.0;
  for (const Matrix* a : others) {
    const double oz = trace_pair(*a, z);
    const double ob = a->trace() / d;
    if (oz >= floor) continue;
    if (ob <= floor) return -1.0;
    s = std::max(s, (floor - oz) / (ob - oz));
  }
  return s;
}

Matrix mix(const Matrix& z, double s) {
  const int d = static_cast<int>(z.rows());
  return (1.0 - s) * z + (s / d) * Matrix::Identity(d, d);
}

Matrix clip_psd(const Matrix& z) {
  const auto eig = linalg::jacobi_eigen(z);
  Matrix out = Matrix::Zero(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values[i] > 0) out += eig.values[i] * eig.vectors.col(i) * eig.vectors.col(i).transpose();
  const double tr = out.trace();
  return tr > 0 ? Matrix(out / tr) : out;
}

std::vector<double> lsq_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  const double slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  return {slope, (sy - slope * sx) / n};
}

}  // namespace

std::string to_string(SideFlag f) {
  switch (f) {
    case SideFlag::Essential: return "essential";
    case SideFlag::Redundant: return "redundant";
    case SideFlag::Undecided: return "undecided";
  }
  return "undecided";
}

std::string to_string(Region r) { return r == Region::Satake ? "satake" : "spd-interior"; }

std::vector<std::size_t> DomainTruncation::retained() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i] != SideFlag::Redundant) out.push_back(i);
  return out;
}

int DomainTruncation::count(SideFlag f) const {
  return static_cast<int>(std::count(flags.begin(), flags.end(), f));
}

DomainTruncation build_domain(const WordBall& ball, const SpdPoint& o) {
  DomainTruncation dom;
  dom.o = o;
  dom.radius = ball.radius;
  const double o_scale = o.matrix().cwiseAbs().maxCoeff();
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 1; i < ball.elements.size(); ++i) {
    const auto& g = ball.elements[i];
    const SpdPoint p = symspace::act(g.matrix, g.inverse, o);
    if ((p.matrix() - o.matrix()).cwiseAbs().maxCoeff() <= 1e-9 * o_scale) continue;  // stabilizer
    HalfSpace h = symspace::half_space(o, p);
    const std::string key = groups::float_key(h.functional, false);
    if (!seen.emplace(key, dom.half_spaces.size()).second) continue;
    h.source_word = g.word;
    h.source_element = g.matrix;
    dom.half_spaces.push_back(std::move(h));
    dom.element.push_back(i);
    dom.length.push_back(g.length);
  }
  dom.flags.assign(dom.half_spaces.size(), SideFlag::Undecided);
  dom.witnesses.assign(dom.half_spaces.size(), std::nullopt);
  dom.boundary_only.assign(dom.half_spaces.size(), false);
  return dom;
}

Matrix adapted_functional(const HalfSpace& h, const SpdPoint& o) {
  Matrix a = linalg::symmetrize(o.factor().transpose() * h.functional * o.factor());
  const double nrm = a.norm();
  return nrm > 0 ? Matrix(a / nrm) : a;
}

SideDecision decide_side(const Matrix& target, const std::vector<Matrix>& others, int cut_budget) {
  const int d = static_cast<int>(target.rows());
  const Vector ident = linalg::pair_vec(Matrix::Identity(d, d));

  std::vector<std::vector<double>> cols;
  std::vector<double> costs;
  for (const auto& a : others) {
    cols.push_back(to_std(linalg::pair_vec(a)));
    costs.push_back(0.0);
  }
  cols.push_back(to_std(ident));
  costs.push_back(-1.0);
  cols.push_back(to_std(-ident));
  costs.push_back(1.0);
  // Initial cuts keep the relaxation bounded: z_ii >= 0 and z_ii + z_jj +- 2 z_ij >= 0.
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = 1;
    cols.push_back(to_std(rank_one_pair_vec(e)));
    costs.push_back(0.0);
    for (int j = i + 1; j < d; ++j) {
      for (double sgn : {1.0, -1.0}) {
        Vector v = Vector::Zero(d);
        v[i] = 1;
        v[j] = sgn;
        cols.push_back(to_std(rank_one_pair_vec(v)));
        costs.push_back(0.0);
      }
    }
  }

  lp::RevisedSimplex<double> solver(std::move(cols), std::move(costs), to_std(linalg::pair_vec(target)));
  SideDecision dec;
  for (;;) {
    if (solver.solve() != lp::Status::Optimal) return dec;  // undecided
    dec.value = -solver.objective();
    if (dec.value >= -kRedundantTol) {
      dec.flag = SideFlag::Redundant;
      return dec;
    }
    const std::vector<double> y = solver.duals();
    Vector zv(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) zv[static_cast<Eigen::Index>(i)] = -y[i];
    const Matrix z = linalg::from_upper_vec(zv, d);
    const auto eig = linalg::jacobi_eigen(z);
    if (eig.values[d - 1] >= -kPsdTol) {
      dec.witness_z = z;
      dec.flag = SideFlag::Essential;
      return dec;
    }
    for (int i = 0; i < d; ++i) {
      if (eig.values[i] >= -kPsdTol) continue;
      if (++dec.cuts > cut_budget) return dec;
      solver.add_column(to_std(rank_one_pair_vec(eig.vectors.col(i))), 0.0);
    }
  }
}

namespace {

struct Classifier {
  DomainTruncation& dom;
  Region region;
  std::vector<Matrix> adapted;
  std::vector<std::size_t> active;  // essential or undecided so far

  // Decides side i against the active set (excluding i) and refreshes its witness.
  SideFlag decide(std::size_t i) {
    std::vector<Matrix> others;
    std::vector<const Matrix*> other_ptrs;
    for (std::size_t j : active)
      if (j != i) others.push_back(adapted[j]);
    for (const auto& a : others) other_ptrs.push_back(&a);
    const SideDecision dec = decide_side(adapted[i], others);
    dom.witnesses[i].reset();
    dom.boundary_only[i] = false;
    if (dec.flag == SideFlag::Undecided && dec.cuts > 500) ++dom.lp_stalls;
    if (dec.flag != SideFlag::Essential) return dec.flag;

    // Clean the relaxation optimum into a certified witness.
    Matrix z = clip_psd(*dec.witness_z);
    const double s = mix_weight(z, other_ptrs, 1e-12);
    if (s < 0.0) return SideFlag::Undecided;
    z = mix(z, s);
    if (!(trace_pair(adapted[i], z) < -kWitnessTol)) return SideFlag::Undecided;

    const double lmin = linalg::jacobi_eigen(z).values[z.rows() - 1];
    if (lmin <= kInteriorEig) {
      const int d = static_cast<int>(z.rows());
      const double need = std::min(1.0, (1.01 * kInteriorEig - lmin) * d / std::max(1.0 - lmin * d, 1e-12));
      const Matrix zi = mix(z, std::max(need, 0.0));
      if (trace_pair(adapted[i], zi) < -kWitnessTol && linalg::jacobi_eigen(zi).values[d - 1] > kInteriorEig) {
        z = zi;
      } else {
        dom.boundary_only[i] = true;
      }
    }
    dom.witnesses[i] = dom.o.factor() * z * dom.o.factor().transpose();
    witness_z[i] = z;
    if (region == Region::SpdInterior && dom.boundary_only[i]) return SideFlag::Undecided;
    return SideFlag::Essential;
  }

  std::vector<std::optional<Matrix>> witness_z;

  void add(std::size_t h) {
    const SideFlag f = decide(h);
    dom.flags[h] = f;
    if (f == SideFlag::Redundant) return;
    // Older active sides whose witness violates h need a fresh decision.
    std::vector<std::size_t> recheck;
    for (std::size_t e : active) {
      if (dom.flags[e] == SideFlag::Essential && witness_z[e] && trace_pair(adapted[h], *witness_z[e]) >= -1e-10) continue;
      recheck.push_back(e);
    }
    active.push_back(h);
    for (std::size_t e : recheck) {
      const SideFlag fe = decide(e);
      dom.flags[e] = fe;
      if (fe == SideFlag::Redundant) {
        witness_z[e].reset();
        active.erase(std::find(active.begin(), active.end(), e));
      }
    }
  }
};

}  // namespace

void classify_sides(DomainTruncation& dom, Region region) {
  Classifier c{dom, region, {}, {}, {}};
  for (const auto& h : dom.half_spaces) c.adapted.push_back(adapted_functional(h, dom.o));
  c.witness_z.assign(dom.half_spaces.size(), std::nullopt);
  dom.flags.assign(dom.half_spaces.size(), SideFlag::Undecided);
  dom.side_history.clear();
  std::size_t next = 0;
  for (int r = 1; r <= dom.radius; ++r) {
    while (next < dom.half_spaces.size() && dom.length[next] <= r) c.add(next++);
    SideHistoryRow row{r, 0, 0};
    for (std::size_t e : c.active) {
      if (dom.flags[e] == SideFlag::Essential) ++row.essential;
      if (dom.flags[e] == SideFlag::Undecided) ++row.undecided;
    }
    dom.side_history.push_back(row);
  }
}

std::vector<SideHistoryRow> side_growth(const groups::GroupSpec& spec, const SpdPoint& o, int r_max, Region region) {
  if (r_max < 2) throw Error(ErrorCode::RadiusTooSmall, "side growth needs R_max >= 2");
  const WordBall ball = groups::word_ball(spec, r_max);
  DomainTruncation dom = build_domain(ball, o);
  classify_sides(dom, region);
  return dom.side_history;
}

MarginReport margin_report(const DomainTruncation& dom, const WordBall& ball, std::uint64_t seed) {
  const SpdPoint& o = dom.o;
  const int d = o.dim();
  std::vector<Matrix> adapted;
  for (std::size_t i : dom.retained()) adapted.push_back(adapted_functional(dom.half_spaces[i], o));

  // Witness tensors in o-adapted coordinates, each with unit trace.
  std::vector<Matrix> witnesses;
  for (std::size_t i = 0; i < dom.half_spaces.size(); ++i) {
    if (dom.flags[i] != SideFlag::Essential || !dom.witnesses[i]) continue;
    const Matrix a = adapted_functional(dom.half_spaces[i], o);
    const Matrix z = o.factor_inverse() * *dom.witnesses[i] * o.factor_inverse().transpose();
    // slide toward I/d onto the side itself
    const double oz = trace_pair(a, z), ob = a.trace() / d;
    witnesses.push_back(mix(z, oz < 0 ? -oz / (ob - oz) : 0.0));
  }

  constexpr double kSlack = 1e-2;
  constexpr std::size_t kRankOne = 200;
  const auto near_domain = [&](const Vector& v) {
    for (const auto& a : adapted)
      if (v.dot(a * v) < -kSlack) return false;
    return true;
  };
  // Fixed directions of the generators, then random directions.
  for (std::size_t s = 0; s < ball.spec.size(); ++s) {
    const Eigen::EigenSolver<Matrix> es(ball.spec.generators[s]);
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
      if (std::abs(es.eigenvalues()[j].imag()) > 1e-12) continue;
      const Vector v = (o.factor_inverse() * es.eigenvectors().col(j).real()).normalized();
      if (near_domain(v)) witnesses.push_back(v * v.transpose());
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t taken = 0;
  for (int trial = 0; trial < 20000 && taken < kRankOne; ++trial) {
    Vector v(d);
    for (int j = 0; j < d; ++j) v[j] = normal(rng);
    v.normalize();
    if (!near_domain(v)) continue;
    witnesses.push_back(v * v.transpose());
    ++taken;
  }
  if (witnesses.empty()) throw Error(ErrorCode::NoWitnesses, "no witness tensors for the margin report");

  MarginReport rep;
  rep.witness_count = witnesses.size();
  rep.log_d_threshold = std::log(static_cast<double>(d));
  rep.shells.assign(static_cast<std::size_t>(ball.radius + 1), kInf);
  rep.shells[0] = 0.0;
  const double o_scale = o.matrix().cwiseAbs().maxCoeff();
  for (int L = 1; L <= ball.radius; ++L) {
    double& slot = rep.shells[static_cast<std::size_t>(L)];
    for (std::size_t i = ball.shell_begin[static_cast<std::size_t>(L)]; i < ball.shell_begin[static_cast<std::size_t>(L + 1)]; ++i) {
      const auto& g = ball.elements[i];
      const Matrix m = o.factor_inverse() * g.inverse * o.factor();
      if ((m * m.transpose() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-9 * o_scale) continue;
      const Matrix mtm = m.transpose() * m;
      for (const auto& z : witnesses) slot = std::min(slot, std::log(trace_pair(mtm, z) / z.trace()));
    }
  }

  for (int l0 = 1; l0 + 2 <= ball.radius; ++l0) {
    bool ok = true;
    std::vector<double> xs, ys;
    for (int L = l0; L <= ball.radius && ok; ++L) {
      const double m = rep.shells[static_cast<std::size_t>(L)];
      if (!(m > rep.log_d_threshold)) ok = false;
      if (L > l0 && !(m > rep.shells[static_cast<std::size_t>(L - 1)])) ok = false;
      xs.push_back(L);
      ys.push_back(m);
    }
    if (!ok) continue;
    const double slope = lsq_line(xs, ys)[0];
    if (slope > 0) {
      rep.properly_finite_sided_empirical = true;
      rep.l0 = l0;
      rep.fitted_slope = slope;
      break;
    }
  }
  return rep;
}

TilingReport tiling_check(const DomainTruncation& dom, const WordBall& ball, int samples, double selberg_radius,
                          std::uint64_t seed) {
  const SpdPoint& o = dom.o;
  const int d = o.dim();
  std::vector<Matrix> adapted;
  for (std::size_t i : dom.retained()) adapted.push_back(adapted_functional(dom.half_spaces[i], o));
  std::vector<SpdPoint> orbit;
  for (const auto& g : ball.elements) orbit.push_back(symspace::act(g.matrix, g.inverse, o));

  TilingReport rep;
  rep.samples = samples;
  rep.radius = selberg_radius;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    Matrix h(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) h(i, j) = h(j, i) = normal(rng);
    h -= (h.trace() / d) * Matrix::Identity(d, d);
    const auto eig = linalg::jacobi_eigen(h);
    // The Selberg invariant of exp(tH) from I is at most t * lambda_max(H).
    const double t = unif(rng) * selberg_radius / std::max(eig.values[0], 1e-12);
    Matrix expm = eig.vectors * (t * eig.values).array().exp().matrix().asDiagonal() * eig.vectors.transpose();
    const SpdPoint x = symspace::make_point(o.factor() * expm * o.factor().transpose());

    std::size_t best = 0;
    double best_v = kInf;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      const double v = symspace::selberg_invariant(orbit[i], x);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    const auto& g = ball.elements[best];
    const SpdPoint y = symspace::act(g.inverse, g.matrix, x);
    Matrix zy = o.factor_inverse() * y.matrix() * o.factor_inverse().transpose();
    zy /= zy.trace();
    double worst = kInf;
    for (const auto& a : adapted) worst = std::min(worst, trace_pair(a, zy));
    if (adapted.empty()) worst = 0.0;
    rep.worst_value = std::min(rep.worst_value, worst);
    if (worst < -1e-8) ++rep.violations;
  }
  return rep;
}

FinslerMembership finsler_membership(const OmegaForm& w, const SpdPoint& o, const WordBall& ball, const SpdPoint& x) {
  FinslerMembership out;
  const double base = symspace::finsler_distance(w, o, x);
  const double o_scale = o.matrix().cwiseAbs().maxCoeff();
  for (std::size_t i = 1; i < ball.elements.size(); ++i) {
    const auto& g = ball.elements[i];
    const SpdPoint p = symspace::act(g.matrix, g.inverse, o);
    if ((p.matrix() - o.matrix()).cwiseAbs().maxCoeff() <= 1e-9 * o_scale) continue;
    const double diff = symspace::finsler_distance(w, p, x) - base;
    if (diff < -1e-9) {
      out.inside = false;
      out.witness = i;
      out.difference = diff;
      return out;
    }
  }
  return out;
}

OrbitInfimum orbit_infimum(const Vector& wv, const WordBall& ball, const SpdPoint& o) {
  if (wv.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "direction is zero");
  OrbitInfimum out;
  const Vector base = o.factor_inverse() * wv;
  const double base_sq = base.squaredNorm();
  out.per_shell_min.assign(static_cast<std::size_t>(ball.radius + 1), kInf);
  out.value = kInf;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    const auto& g = ball.elements[i];
    // F_{g.o}^{-1} = F_o^{-1} g^{-1}
    const double v = 0.5 * std::log((o.factor_inverse() * (g.inverse * wv)).squaredNorm() / base_sq);
    double& slot = out.per_shell_min[static_cast<std::size_t>(g.length)];
    slot = std::min(slot, v);
    if (v < out.value) {
      out.value = v;
      out.argmin = i;
    }
  }
  if (ball.radius >= 2) {
    std::vector<double> xs, ys;
    for (int L = ball.radius - 2; L <= ball.radius; ++L) {
      xs.push_back(L);
      ys.push_back(out.per_shell_min[static_cast<std::size_t>(L)]);
    }
    out.tail_slope = lsq_line(xs, ys)[0];
    out.escape = out.tail_slope < -0.05;
  }
  return out;
}

int RestrictedDomain::essential() const {
  return static_cast<int>(std::count(flags.begin(), flags.end(), SideFlag::Essential));
}

double transversality_margin(const certify::LimitDirections& sample) {
  double margin = kInf;
  for (std::size_t x = 0; x < sample.directions.size(); ++x)
    for (std::size_t y = 0; y < sample.directions.size(); ++y) {
      if (x == y) continue;
      const double c = std::abs(sample.hyperplane_normals[y].normalized().dot(sample.directions[x].normalized()));
      margin = std::min(margin, std::asin(std::min(1.0, c)));
    }
  return margin;
}

namespace {

enum class HullResult { Redundant, Essential, Undecided };

struct HullDecision {
  HullResult result = HullResult::Undecided;
  Vector weights;
};

// min sum_j mu_j t_j over mu in the simplex with sum_j mu_j c_kj >= 0 for every row c_k of `others`.
HullDecision decide_hull(const Vector& target, const std::vector<const Vector*>& others) {
  HullDecision out;
  if (target.minCoeff() >= -kRedundantTol) {
    out.result = HullResult::Redundant;
    return out;
  }
  const std::size_t n = static_cast<std::size_t>(target.size());
  const std::size_t m = others.size() + 1;
  std::vector<std::vector<double>> cols;
  std::vector<double> costs;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(m, 0.0);
    for (std::size_t k = 0; k < others.size(); ++k) col[k] = (*others[k])[static_cast<Eigen::Index>(j)];
    col[m - 1] = 1.0;
    cols.push_back(std::move(col));
    costs.push_back(target[static_cast<Eigen::Index>(j)]);
  }
  for (std::size_t k = 0; k < others.size(); ++k) {
    std::vector<double> col(m, 0.0);
    col[k] = -1.0;
    cols.push_back(std::move(col));
    costs.push_back(0.0);
  }
  std::vector<double> rhs(m, 0.0);
  rhs[m - 1] = 1.0;
  lp::RevisedSimplex<double> solver(std::move(cols), std::move(costs), std::move(rhs));
  const auto status = solver.solve();
  if (status == lp::Status::Infeasible) {
    out.result = HullResult::Redundant;  // the restricted region is already empty
    return out;
  }
  if (status != lp::Status::Optimal) return out;
  if (solver.objective() >= -kRedundantTol) {
    out.result = HullResult::Redundant;
    return out;
  }
  const auto x = solver.solution();
  out.weights = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) out.weights[static_cast<Eigen::Index>(j)] = std::max(0.0, x[j]);
  out.weights /= out.weights.sum();
  out.result = HullResult::Essential;
  return out;
}

}  // namespace

RestrictedDomain build_restricted_domain(const certify::LimitDirections& sample, const WordBall& ball, const SpdPoint& o) {
  if (sample.directions.empty()) throw Error(ErrorCode::EmptySample, "empty limit sample");
  RestrictedDomain rd;
  rd.transversality = sample.directions.size() > 1 ? transversality_margin(sample) : kInf;
  if (sample.directions.size() > 1 && !(rd.transversality > 1e-4))
    throw Error(ErrorCode::TransversalityFailure, "limit sample meets a limit hyperplane (margin " +
                                                      std::to_string(rd.transversality) + ")");
  for (const auto& v : sample.directions) rd.hull_directions.push_back(v.normalized());

  const DomainTruncation dom = build_domain(ball, o);
  rd.half_spaces = dom.half_spaces;
  rd.element = dom.element;
  const std::size_t n = rd.hull_directions.size();
  std::vector<Vector> values;
  for (const auto& h : rd.half_spaces) {
    const double nrm = h.functional.norm();
    Vector t(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      const Vector& v = rd.hull_directions[j];
      t[static_cast<Eigen::Index>(j)] = v.dot(h.functional * v) / nrm;
    }
    values.push_back(std::move(t));
  }
  rd.flags.assign(rd.half_spaces.size(), SideFlag::Undecided);
  rd.witnesses.assign(rd.half_spaces.size(), std::nullopt);

  std::vector<std::size_t> active;
  const auto decide = [&](std::size_t i) {
    std::vector<const Vector*> others;
    for (std::size_t j : active)
      if (j != i) others.push_back(&values[j]);
    const HullDecision dec = decide_hull(values[i], others);
    rd.witnesses[i].reset();
    if (dec.result == HullResult::Essential) {
      rd.witnesses[i] = dec.weights;
      return SideFlag::Essential;
    }
    return dec.result == HullResult::Redundant ? SideFlag::Redundant : SideFlag::Undecided;
  };
  for (std::size_t h = 0; h < rd.half_spaces.size(); ++h) {
    rd.flags[h] = decide(h);
    if (rd.flags[h] == SideFlag::Redundant) continue;
    std::vector<std::size_t> recheck;
    for (std::size_t e : active) {
      if (rd.flags[e] == SideFlag::Essential && rd.witnesses[e] && rd.witnesses[e]->dot(values[h]) >= -1e-10) continue;
      recheck.push_back(e);
    }
    active.push_back(h);
    for (std::size_t e : recheck) {
      rd.flags[e] = decide(e);
      if (rd.flags[e] == SideFlag::Redundant) active.erase(std::find(active.begin(), active.end(), e));
    }
  }
  return rd;
}

double restricted_selberg(const SpdPoint& x, const SpdPoint& y, int k) {
  return symspace::restricted_selberg_sl2(k, symspace::vector_distance(x, y).entries[0]);
}

QuotientInvariant quotient_restricted_selberg(const SpdPoint& x, const SpdPoint& y, const WordBall& ball, int k) {
  QuotientInvariant out;
  out.value = kInf;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    const auto& g = ball.elements[i];
    const double v = restricted_selberg(x, symspace::act(g.matrix, g.inverse, y), k);
    if (v < out.value - 1e-12) {
      out.value = v;
      out.argmin = i;
    }
  }
  return out;
}

}  // namespace anosov::domains
