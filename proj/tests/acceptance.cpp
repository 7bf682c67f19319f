// Acceptance runner: one PASS/FAIL line per criterion G1..G10.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anosov/certify.hpp"
#include "anosov/domains.hpp"
#include "anosov/groups.hpp"
#include "anosov/symspace.hpp"
#include "test_support.hpp"

using namespace anosov;
using certify::Mode;
using certify::Verdict;
using domains::Region;
using domains::SideFlag;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

symspace::SpdPoint identity_point(int d) { return symspace::make_point(Matrix::Identity(d, d)); }

std::vector<int> essential_counts(const domains::DomainTruncation& dom) {
  std::vector<int> out{0};
  for (const auto& row : dom.side_history) out.push_back(row.essential);
  return out;
}

bool strictly_increasing(const std::vector<int>& counts, int from, int to) {
  for (int r = from + 1; r <= to; ++r)
    if (counts[static_cast<std::size_t>(r)] <= counts[static_cast<std::size_t>(r - 1)]) return false;
  return true;
}

double lambda_max(const Matrix& a) { return Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues().maxCoeff(); }

// ---------------------------------------------------------------------------

void g1(Outcome& out) {
  std::mt19937_64 rng(101);
  double worst_sandwich = 0.0, worst_invariance = 0.0, worst_self = 0.0, min_value = 0.0;
  int indiscernible_failures = 0;
  for (int d = 2; d <= 6; ++d) {
    const auto w = symspace::OmegaForm::omega1(d);
    for (int k = 0; k < 500; ++k) {
      const auto x = symspace::make_point(testing::random_spd(d, rng, 0.8));
      const auto y = symspace::make_point(testing::random_spd(d, rng, 0.8));
      const double s = symspace::selberg_invariant(x, y);
      min_value = std::min(min_value, s);
      worst_self = std::max(worst_self, std::abs(symspace::selberg_invariant(x, x)));
      if (s <= 1e-9) ++indiscernible_failures;

      const Matrix g = testing::random_sl(d, rng);
      const Matrix gi = g.inverse();
      const double moved = symspace::selberg_invariant(symspace::act(g, gi, x), symspace::act(g, gi, y));
      worst_invariance = std::max(worst_invariance, std::abs(moved - s));

      const double f = symspace::finsler_distance(w, x, y);
      worst_sandwich = std::min({worst_sandwich, s - (f - std::log(d)), f - s});
    }
  }
  out.detail << "min s=" << min_value << " self=" << worst_self << " invariance=" << worst_invariance
             << " sandwich slack=" << worst_sandwich;
  out.require(min_value >= 0.0, "nonnegativity");
  out.require(worst_self <= 1e-9 && indiscernible_failures == 0, "identity of indiscernibles");
  out.require(worst_invariance <= 1e-8, "invariance");
  out.require(worst_sandwich >= -1e-9, "sandwich");
}

void g2(Outcome& out) {
  std::mt19937_64 rng(202);
  int disagreements = 0, compared = 0;
  for (int k = 0; k < 10000; ++k) {
    const int d = 2 + k % 5;
    const auto o = symspace::make_point(testing::random_spd(d, rng));
    const auto p = symspace::make_point(testing::random_spd(d, rng));
    Matrix y;
    if (k % 2 == 0) {
      y = testing::random_spd(d, rng);
    } else {
      const Vector v = testing::random_unit(d, rng);
      y = v * v.transpose();
    }
    const double pairing = symspace::half_space(o, p).pairing(y);
    // Independent evaluation of log Tr(P^{-1} Y) - log Tr(O^{-1} Y).
    const double diff = std::log((p.matrix().inverse() * y).trace()) - std::log((o.matrix().inverse() * y).trace());
    if (std::abs(diff) < 1e-9) continue;
    ++compared;
    if ((pairing >= 0) != (diff >= 0)) ++disagreements;
  }
  out.detail << "sign disagreements " << disagreements << "/" << compared;
  out.require(disagreements == 0, "half-space sign");

  Matrix q = Matrix::Zero(3, 3);
  q.diagonal() << 1, -1, -1;
  int bad_signature = 0;
  for (int k = 0; k < 100; ++k) {
    const auto timelike = [&] {
      Vector u = testing::random_unit(2, rng) * std::uniform_real_distribution<double>(0.0, 3.0)(rng);
      Vector v(3);
      v << std::sqrt(1 + u.squaredNorm()) * std::uniform_real_distribution<double>(1.0, 1.5)(rng), u[0], u[1];
      return v;
    };
    const auto quad = symspace::so_n1_bisector(timelike(), timelike(), q);
    const linalg::Inertia expect{1, 1, 1};
    if (!(quad.signature == expect)) ++bad_signature;
  }
  out.detail << "; bad signatures " << bad_signature << "/100";
  out.require(bad_signature == 0, "bisector signature (1,1,1)");

  Vector l1(3), u(3);
  l1 << 1, 0, 0;
  u << 1, 1, 0;
  const Vector tangent_normal = q * u;
  std::vector<double> sweep;
  for (int t = 1; t <= 10; ++t) {
    Vector l2(3);
    l2 << std::cosh(t), std::sinh(t), 0;
    sweep.push_back(symspace::hausdorff_to_hyperplane(symspace::so_n1_bisector(l1, l2, q), tangent_normal));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < sweep.size(); ++i) monotone = monotone && sweep[i] < sweep[i - 1];
  out.detail << "; hausdorff t=1 " << sweep.front() << " t=10 " << sweep.back();
  out.require(monotone, "monotone boost sweep");
}

void g3(Outcome& out) {
  for (const char* name : {"fx:schottky-sl2:3", "fx:block-embed-sl4"}) {
    const auto spec = groups::fixture_from_string(name);
    const auto ball = groups::word_ball(spec, 8);
    const auto o = identity_point(spec.dim);
    const auto est = certify::estimate_undistorted(ball, o, symspace::OmegaForm::omega1(spec.dim));
    int certified_at = 0;
    for (int depth = 1; depth <= 4 && certified_at == 0; ++depth)
      if (certify::certify_disjoint_half_spaces(ball, o, depth, Mode::Satake).verdict == Verdict::Certified)
        certified_at = depth;

    auto dom = domains::build_domain(ball, o);
    domains::classify_sides(dom, Region::Satake);
    const auto counts = essential_counts(dom);
    int r0 = 8;
    while (r0 > 1 && counts[static_cast<std::size_t>(r0 - 1)] == counts[8]) --r0;
    int longest = 0;
    for (std::size_t i = 0; i < dom.flags.size(); ++i)
      if (dom.flags[i] != SideFlag::Redundant) longest = std::max(longest, dom.length[i]);
    const auto margin = domains::margin_report(dom, ball, 0);

    out.detail << name << ": A_hat=" << est.a_hat << " wall=" << est.wall_margin << " certified D=" << certified_at
               << " r0=" << r0 << " sides=" << counts[8] << " margin L0=" << margin.l0 << "; ";
    out.require(est.a_hat > 0 && est.wall_margin > 0.1, std::string(name) + " undistorted estimate");
    out.require(certified_at > 0, std::string(name) + " disjointness");
    out.require(r0 <= 5 && longest <= 5 && dom.count(SideFlag::Undecided) == 0, std::string(name) + " side stabilization");
    out.require(margin.properly_finite_sided_empirical, std::string(name) + " margin trend");
  }
}

void g4(Outcome& out) {
  // parabolic: the support slope decays toward zero as the radius grows
  {
    const auto spec = groups::fixture_from_string("fx:parabolic-sl2");
    std::vector<double> slopes;
    for (int r : {8, 16, 32, 64}) {
      const auto ball = groups::word_ball(spec, r);
      slopes.push_back(certify::estimate_undistorted(ball, identity_point(2), symspace::OmegaForm::omega1(2)).a_hat);
    }
    bool decaying = true;
    for (std::size_t i = 1; i < slopes.size(); ++i) decaying = decaying && slopes[i] < slopes[i - 1];
    out.detail << "parabolic A_hat(R=8..64)=" << slopes.front() << ".." << slopes.back() << "; ";
    out.require(decaying && slopes.back() < 0.1, "parabolic A_hat decays");
  }
  {
    const auto spec = groups::fixture_from_string("fx:sl3-diagonal:2");
    const auto ball = groups::word_ball(spec, 8);
    const auto est = certify::estimate_undistorted(ball, identity_point(3), symspace::OmegaForm::omega1(3));
    double largest = 0.0;
    for (std::size_t L = 1; L < est.per_shell_min.size(); ++L) largest = std::max(largest, std::abs(est.per_shell_min[L]));
    out.detail << "sl3 max per-shell min=" << largest << "; ";
    out.require(largest <= 1e-12, "sl3 per_shell_min vanishes");
  }
  for (const char* name : {"fx:parabolic-sl2", "fx:sl3-diagonal:2"}) {
    const auto spec = groups::fixture_from_string(name);
    const auto ball = groups::word_ball(spec, 8);
    for (const auto& o : {identity_point(spec.dim), testing::off_axis_point(spec.dim)})
      for (int depth = 1; depth <= 4; ++depth)
        for (Mode mode : {Mode::Satake, Mode::Flag}) {
          const auto cert = certify::certify_disjoint_half_spaces(ball, o, depth, mode, 0, 2000);
          out.require(cert.verdict != Verdict::Certified, std::string(name) + " certified at D=" + std::to_string(depth));
        }
  }
  {
    const auto spec = groups::fixture_from_string("fx:sl3-diagonal:2");
    const auto ball = groups::word_ball(spec, 8);
    auto dom = domains::build_domain(ball, testing::off_axis_point(3));
    domains::classify_sides(dom, Region::Satake);
    const auto counts = essential_counts(dom);
    out.detail << "sl3 off-axis essential r=3..8:";
    for (int r = 3; r <= 8; ++r) out.detail << " " << counts[static_cast<std::size_t>(r)];
    out.require(strictly_increasing(counts, 3, 8), "sl3 strict side growth");
  }
}

void g5(Outcome& out) {
  const auto spec = groups::fixture_from_string("fx:so21-integral-lattice");
  const auto ball = groups::word_ball(spec, 8);
  auto dom = domains::build_domain(ball, identity_point(3));
  domains::classify_sides(dom, Region::Satake);
  const auto counts = essential_counts(dom);
  out.detail << "o=I essential r=3..8:";
  for (int r = 3; r <= 8; ++r) out.detail << " " << counts[static_cast<std::size_t>(r)];
  out.require(strictly_increasing(counts, 3, 8), "strict growth at o = I");

  auto generic = domains::build_domain(ball, testing::off_axis_point(3));
  domains::classify_sides(generic, Region::Satake);
  const auto gcounts = essential_counts(generic);
  out.detail << "; generic basepoint (reported only):";
  for (int r = 3; r <= 8; ++r) out.detail << " " << gcounts[static_cast<std::size_t>(r)];
}

void g6(Outcome& out) {
  const auto spec = groups::fixture_from_string("fx:cyclic-diagonal:2");
  const auto ball = groups::word_ball(spec, 8);
  const auto o = identity_point(2);
  auto dom = domains::build_domain(ball, o);
  domains::classify_sides(dom, Region::Satake);
  for (const auto& row : dom.side_history) out.require(row.essential == 2 && row.undecided == 0, "two sides at r=" + std::to_string(row.radius));

  // Hand reduction: the two sides are y2 >= y1/4 and y2 <= 4 y1.
  int matched = 0;
  for (std::size_t i = 0; i < dom.flags.size(); ++i) {
    if (dom.flags[i] != SideFlag::Essential) continue;
    const Matrix& a = dom.half_spaces[i].functional;
    const Matrix& y = *dom.witnesses[i];
    const bool lower = std::abs(a(1, 1) / a(0, 0) + 4.0) < 1e-12;  // multiple of diag(-1, 4)
    const bool upper = std::abs(a(0, 0) / a(1, 1) + 4.0) < 1e-12;  // multiple of diag(4, -1)
    const bool violates_lower = y(1, 1) < y(0, 0) / 4, violates_upper = y(1, 1) > 4 * y(0, 0);
    if (lower && violates_lower && !violates_upper) ++matched;
    if (upper && violates_upper && !violates_lower) ++matched;
  }
  out.detail << "matched witnesses " << matched << "/2";
  out.require(matched == 2, "witnesses");

  const auto cert = certify::certify_disjoint_half_spaces(ball, o, 2, Mode::Satake);
  double at_half = -std::numeric_limits<double>::infinity();
  for (const auto& t : groups::geodesic_triples(ball, 2)) {
    const auto xo = symspace::act(ball.elements[t.x].matrix, ball.elements[t.x].inverse, o);
    const auto zo = symspace::act(ball.elements[t.z].matrix, ball.elements[t.z].inverse, o);
    const Matrix a1 = symspace::half_space(xo, o).functional, a2 = symspace::half_space(zo, o).functional;
    at_half = std::max(at_half, lambda_max(0.5 * (a1 + a2)));
  }
  out.detail << "; D=2 verdict " << certify::to_string(cert.verdict) << " pencil(1/2)=" << at_half
             << " search min=" << cert.worst_lambda;
  out.require(cert.verdict == Verdict::Certified && at_half <= -1.0, "D=2 disjointness");
}

// Escape arcs of the cyclic group on RP^1, refined by bisection from the grid.
std::vector<std::pair<double, double>> escape_arcs(const groups::WordBall& ball, int grid, bool& only_two) {
  const auto o = identity_point(2);
  const auto escapes = [&](double theta) {
    Vector w(2);
    w << std::cos(theta), std::sin(theta);
    return domains::orbit_infimum(w, ball, o).escape;
  };
  const double step = std::numbers::pi / grid;
  std::vector<bool> flag(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) flag[static_cast<std::size_t>(i)] = escapes(i * step);
  std::vector<std::pair<double, double>> arcs;
  for (int i = 0; i < grid; ++i) {
    if (!flag[static_cast<std::size_t>(i)] || flag[static_cast<std::size_t>((i + grid - 1) % grid)]) continue;
    int j = i;
    while (flag[static_cast<std::size_t>((j + 1) % grid)] && (j + 1) % grid != i) ++j;
    double lo_in = i * step, lo_out = lo_in - step, hi_in = j * step, hi_out = hi_in + step;
    for (int it = 0; it < 60; ++it) {
      const double m1 = 0.5 * (lo_in + lo_out), m2 = 0.5 * (hi_in + hi_out);
      (escapes(m1) ? lo_in : lo_out) = m1;
      (escapes(m2) ? hi_in : hi_out) = m2;
    }
    arcs.emplace_back(lo_in, hi_in);
  }
  only_two = arcs.size() == 2;
  return arcs;
}

void g7(Outcome& out) {
  const auto spec = groups::fixture_from_string("fx:cyclic-diagonal:2");
  bool two4 = false, two8 = false;
  const auto arcs4 = escape_arcs(groups::word_ball(spec, 4), 720, two4);
  const auto arcs8 = escape_arcs(groups::word_ball(spec, 8), 720, two8);
  out.require(two4 && two8, "exactly two escape arcs");
  if (two4 && two8) {
    for (double centre : {0.0, std::numbers::pi / 2}) {
      const auto contains = [&](const std::pair<double, double>& a) {
        for (double c : {centre, centre + std::numbers::pi})
          if (a.first <= c + 1e-15 && c <= a.second + 1e-15) return true;
        return false;
      };
      const auto pick = [&](const std::vector<std::pair<double, double>>& arcs) -> const std::pair<double, double>* {
        for (const auto& a : arcs)
          if (contains(a)) return &a;
        return nullptr;
      };
      const auto* a4 = pick(arcs4);
      const auto* a8 = pick(arcs8);
      out.require(a4 && a8, "arc around the eigenline");
      if (!a4 || !a8) continue;
      const double w4 = a4->second - a4->first, w8 = a8->second - a8->first;
      out.detail << "arc at " << centre << " width R=4 " << w4 << " R=8 " << w8 << "; ";
      out.require(w8 <= 0.7 * w4, "arc shrinks by 30%");
    }
  }

  // Schottky: flags from the outer shells, escape flag near them and away from them.
  // A flag of a length-R element only has an escape neighbourhood of angular
  // size about sigma_1^{-2} ~ 9^{-R}, so R = 4 is the radius matching 1e-3.
  const auto sspec = groups::fixture_from_string("fx:schottky-sl2:3");
  const int radius = 4;
  const auto ball = groups::word_ball(sspec, radius);
  const auto flags = certify::sample_limit_flags(ball, 1);
  std::vector<double> angles;
  for (const auto& s : flags.subspaces) {
    double a = std::atan2(s(1, 0), s(0, 0));
    if (a < 0) a += std::numbers::pi;
    angles.push_back(std::fmod(a, std::numbers::pi));
  }
  const auto dist_to_flags = [&](double theta) {
    double best = std::numbers::pi;
    for (double a : angles) {
      const double d = std::fmod(std::abs(theta - a), std::numbers::pi);
      best = std::min(best, std::min(d, std::numbers::pi - d));
    }
    return best;
  };
  const auto o = identity_point(2);
  int labelled = 0, wrong = 0;
  for (int i = 0; i < 720; ++i) {
    const double theta = std::numbers::pi * i / 720;
    const double dist = dist_to_flags(theta);
    if (dist > 1e-3 && dist <= 0.3) continue;
    Vector w(2);
    w << std::cos(theta), std::sin(theta);
    const bool esc = domains::orbit_infimum(w, ball, o).escape;
    ++labelled;
    if (esc != (dist <= 1e-3)) ++wrong;
  }
  // Directions placed at angle 5e-4 from every sampled flag.
  int near_total = 0, near_escape = 0;
  for (double a : angles)
    for (double sgn : {-1.0, 1.0}) {
      Vector w(2);
      w << std::cos(a + sgn * 5e-4), std::sin(a + sgn * 5e-4);
      ++near_total;
      if (domains::orbit_infimum(w, ball, o).escape) ++near_escape;
    }
  const double grid_rate = labelled ? static_cast<double>(wrong) / labelled : 0.0;
  const double near_rate = 1.0 - static_cast<double>(near_escape) / near_total;
  out.detail << "schottky R=" << radius << " flags=" << angles.size() << " grid labelled=" << labelled << " wrong=" << wrong
             << " near-flag misses=" << near_total - near_escape << "/" << near_total;
  out.require(grid_rate <= 0.01, "grid misclassification <= 1%");
  out.require(near_rate <= 0.01, "near-flag misclassification <= 1%");
}

void g8(Outcome& out) {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> ut(-3.0, 3.0), ua(0.0, std::numbers::pi);
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k)
    for (int s = 0; s < 100; ++s) {
      const double t = ut(rng), a = ua(rng);
      Matrix rot(2, 2), diag = Matrix::Zero(2, 2);
      rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
      diag.diagonal() << std::exp(t), std::exp(-t);
      const Matrix y = rot * diag * rot.transpose();
      const double trace_form = std::log(groups::symmetric_power(y, k).trace());
      const double weight_form = domains::restricted_selberg(identity_point(2), symspace::make_point(y), k);
      worst = std::max(worst, std::abs(trace_form - weight_form));
    }
  out.detail << "max |weight - trace| = " << worst;
  out.require(worst <= 1e-9, "weight formula");

  const auto spec = groups::fixture_from_string("fx:cyclic-diagonal:2");
  const auto ball = groups::word_ball(spec, 8);
  Matrix y = Matrix::Zero(2, 2);
  y.diagonal() << 8, 1.0 / 8;
  const auto q = domains::quotient_restricted_selberg(identity_point(2), symspace::make_point(y), ball, 1);
  // gamma^n . y = diag(8 4^n, 1/(8 4^n)): t_n = |3 + 2n| log 2, smallest at n = -1, -2.
  const Matrix& g = ball.elements[q.argmin].matrix;
  const double n = std::log2(g(0, 0));
  out.detail << "; quotient value " << q.value << " at n=" << n;
  out.require(std::abs(q.value - std::log(2.5)) < 1e-12, "quotient minimum value");
  out.require(std::abs(n + 1) < 1e-12 || std::abs(n + 2) < 1e-12, "quotient minimizer");
}

void g9(Outcome& out) {
  const auto spec = groups::fixture_from_string("fx:symmetric-power:2:schottky-sl2:3");
  const auto big = groups::word_ball(spec, 8);
  const auto small = groups::word_ball(spec, 6);
  const auto o = identity_point(3);
  const auto sample = certify::sample_limit_directions(big, 5, 200);
  const double margin = domains::transversality_margin(sample);
  out.detail << "sample=" << sample.directions.size() << " transversality=" << margin;
  out.require(sample.directions.size() == 200, "200-point sample");
  out.require(margin > 1e-4, "transversality");
  if (margin > 1e-4) {
    const auto rd6 = domains::build_restricted_domain(sample, small, o);
    const auto rd8 = domains::build_restricted_domain(sample, big, o);
    out.detail << " essential R=6 " << rd6.essential() << " R=8 " << rd8.essential();
    out.require(rd6.essential() == rd8.essential(), "stable restricted count");
    return;
  }
  // Reported only: the largest sample that still clears the transversality bar.
  for (std::size_t n = 200; n >= 10; n -= 10) {
    const auto sub = certify::sample_limit_directions(big, 5, n);
    if (domains::transversality_margin(sub) <= 1e-4) continue;
    const auto rd6 = domains::build_restricted_domain(sub, small, o);
    const auto rd8 = domains::build_restricted_domain(sub, big, o);
    out.detail << "; largest transversal sample n=" << n << " margin=" << rd6.transversality << " essential R=6 "
               << rd6.essential() << " R=8 " << rd8.essential();
    break;
  }
}

void g10(Outcome& out) {
  for (const char* name : {"fx:schottky-sl2:3", "fx:block-embed-sl4"}) {
    const auto spec = groups::fixture_from_string(name);
    const auto ball = groups::word_ball(spec, 8);
    double top = 0.0;
    for (const auto& g : ball.elements) top = std::max(top, certify::cartan_projection(g, identity_point(spec.dim)).norm());
    const auto s = certify::sample_limit_cone(ball, identity_point(spec.dim), 0.5 * top);
    out.detail << name << ": n=" << s.vectors.size() << " eps=" << s.epsilon << " components=" << s.components << "; ";
    out.require(s.epsilon_graph_connected, std::string(name) + " connected");
  }
  // In SL(2,R) the chamber holds a single direction; the profile (2,-1,-1)
  // separates gamma from gamma^{-1}.
  const auto spec = groups::fixture_from_string("fx:cyclic-diagonal:2:2,-1,-1");
  const auto ball = groups::word_ball(spec, 8);
  const auto s = certify::sample_limit_cone(ball, identity_point(3), 1.0, 0.1);
  out.detail << "cyclic components=" << s.components;
  out.require(s.components == 2, "cyclic has two components");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::pair<std::function<void(Outcome&)>, double>>> criteria{
      {"G1", {g1, 10}}, {"G2", {g2, 30}},  {"G3", {g3, 300}}, {"G4", {g4, 120}}, {"G5", {g5, 600}},
      {"G6", {g6, 5}},  {"G7", {g7, 60}},  {"G8", {g8, 5}},   {"G9", {g9, 180}}, {"G10", {g10, 30}},
  };
  int failures = 0;
  for (const auto& [id, body] : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      body.first(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < body.second, "runtime budget " + std::to_string(body.second) + " s");
    std::printf("%s %s (%.2f s) %s\n", id.c_str(), out.pass ? "PASS" : "FAIL", secs, out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
