#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anosov/certify.hpp"
#include "anosov/groups.hpp"
#include "anosov/symspace.hpp"

namespace anosov::domains {

using groups::WordBall;
using symspace::HalfSpace;
using symspace::OmegaForm;
using symspace::SpdPoint;

enum class SideFlag { Undecided, Essential, Redundant };
enum class Region { Satake, SpdInterior };

std::string to_string(SideFlag f);
std::string to_string(Region r);

struct SideHistoryRow {
  int radius = 0;
  int essential = 0;
  int undecided = 0;
};

struct DomainTruncation {
  SpdPoint o;
  int radius = 0;
  std::vector<HalfSpace> half_spaces;
  /// Ball index of the element producing each half-space, and its word length.
  std::vector<std::size_t> element;
  std::vector<int> length;
  std::vector<SideFlag> flags;
  /// Essential sides: a PSD Y with Tr(O^{-1} Y) = 1 violating only its own side.
  std::vector<std::optional<Matrix>> witnesses;
  /// Essential sides whose witness could not be pushed into the interior.
  std::vector<bool> boundary_only;
  std::vector<SideHistoryRow> side_history;
  int lp_stalls = 0;

  std::vector<std::size_t> retained() const;
  int count(SideFlag f) const;
};

/// One half-space per distinct orbit point gamma.o != o, in BFS order.
DomainTruncation build_domain(const WordBall& ball, const SpdPoint& o);

/// Functional transported to o-adapted coordinates, F_o^T A F_o, scaled to
/// unit Frobenius norm. Tr(A Y) has the sign of Tr(Ã Z) for Y = F_o Z F_o^T.
Matrix adapted_functional(const HalfSpace& h, const SpdPoint& o);

struct SideDecision {
  SideFlag flag = SideFlag::Undecided;
  double value = 0.0;  // relaxation optimum of Tr(Ã_h Z)
  std::optional<Matrix> witness_z;
  int cuts = 0;
};

/// Decides whether min Tr(Ã_h Z) over {Z PSD, Tr Z = 1, Tr(Ã_j Z) >= 0}
/// is negative, by cutting planes over a dense LP core.
SideDecision decide_side(const Matrix& target, const std::vector<Matrix>& others, int cut_budget = 500);

/// Incremental classification in BFS order; fills flags, witnesses and
/// side_history for every radius.
void classify_sides(DomainTruncation& dom, Region region);

/// Convenience: ball, domain, classification. Returns the side history.
std::vector<SideHistoryRow> side_growth(const groups::GroupSpec& spec, const SpdPoint& o, int r_max, Region region);

struct MarginReport {
  std::vector<double> shells;  // index = word length; entry 0 unused (0)
  double log_d_threshold = 0.0;
  bool properly_finite_sided_empirical = false;
  int l0 = -1;
  double fitted_slope = 0.0;
  std::size_t witness_count = 0;
};

MarginReport margin_report(const DomainTruncation& dom, const WordBall& ball, std::uint64_t seed = 0);

struct TilingReport {
  int samples = 0;
  int violations = 0;
  double radius = 0.0;
  double worst_value = 0.0;
};

TilingReport tiling_check(const DomainTruncation& dom, const WordBall& ball, int samples, double selberg_radius,
                          std::uint64_t seed = 0);

struct FinslerMembership {
  bool inside = true;
  std::optional<std::size_t> witness;
  double difference = 0.0;
};

FinslerMembership finsler_membership(const OmegaForm& w, const SpdPoint& o, const WordBall& ball, const SpdPoint& x);

struct OrbitInfimum {
  double value = 0.0;
  std::size_t argmin = 0;
  bool escape = false;
  std::vector<double> per_shell_min;
  double tail_slope = 0.0;
};

OrbitInfimum orbit_infimum(const Vector& wv, const WordBall& ball, const SpdPoint& o);

struct RestrictedDomain {
  std::vector<Vector> hull_directions;
  std::vector<HalfSpace> half_spaces;
  std::vector<std::size_t> element;
  std::vector<SideFlag> flags;
  std::vector<std::optional<Vector>> witnesses;  // barycentric weights
  double transversality = 0.0;
  int essential() const;
};

/// Smallest angle between a sampled direction and the limit hyperplane of
/// another sample point.
double transversality_margin(const certify::LimitDirections& sample);

RestrictedDomain build_restricted_domain(const certify::LimitDirections& sample, const WordBall& ball, const SpdPoint& o);

/// Restricted Selberg invariant on Sym^k for SL(2,R): uses the first entry of
/// the vector-valued distance as t.
double restricted_selberg(const SpdPoint& x, const SpdPoint& y, int k);

struct QuotientInvariant {
  double value = 0.0;
  std::size_t argmin = 0;
};

QuotientInvariant quotient_restricted_selberg(const SpdPoint& x, const SpdPoint& y, const WordBall& ball, int k);

}  // namespace anosov::domains
