#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anosov/groups.hpp"
#include "anosov/symspace.hpp"

namespace anosov::certify {

using groups::WordBall;
using symspace::CartanVector;
using symspace::OmegaForm;
using symspace::SpdPoint;

/// mu(gamma) = log singular values of F_o^{-1} gamma F_o, i.e. half of the
/// vector-valued distance from o to gamma.o.
CartanVector cartan_projection(const groups::GroupElement& g, const SpdPoint& o);

/// Support line through the first shell: a = max(0, min_{L>=2} (m(L)-m(1))/(L-1)),
/// b = max_L (a L - m(L)). Entry 0 of `per_shell` belongs to the identity.
struct SlopeFit {
  double a_hat = 0.0;
  double b_hat = 0.0;
};
SlopeFit fit_support_line(const std::vector<double>& per_shell);

struct AnosovEstimate {
  int k = 1;
  std::vector<double> per_shell_min;  // index = word length
  double a_hat = 0.0;
  double b_hat = 0.0;
};

AnosovEstimate estimate_anosov(const WordBall& ball, const SpdPoint& o, int k);

struct LimitConeSample {
  std::vector<Vector> vectors;  // unit, chamber form
  std::vector<int> lengths;
  double cutoff = 0.0;
  double epsilon = 0.0;
  int components = 0;
  bool epsilon_graph_connected = false;
  /// Largest distance from a sample vector to the sample mean direction.
  double spread = 0.0;
};

/// epsilon <= 0 selects the default: twice the largest nearest-neighbour gap,
/// floored at 1e-6 to absorb rounding between coincident directions.
LimitConeSample sample_limit_cone(const WordBall& ball, const SpdPoint& o, double cutoff, double epsilon = 0.0);

struct UndistortedEstimate {
  std::vector<double> omega;  // canonical coefficients
  int radius = 0;
  std::vector<double> per_shell_min;
  double a_hat = 0.0;
  double b_hat = 0.0;
  double wall_margin = 0.0;
  double c_constant = 0.0;
};

/// Normalized distance from a unit chamber vector to the walls of omega:
/// min_w |omega(w.u)| / |omega|.
double wall_distance(const OmegaForm& w, const Vector& unit);

UndistortedEstimate estimate_undistorted(const WordBall& ball, const SpdPoint& o, const OmegaForm& w);

struct FlagSample {
  int n = 1;
  std::vector<Matrix> subspaces;  // orthonormal d x n bases
  std::vector<std::size_t> sources;
  double gap = 0.0;  // smallest sigma_n / sigma_{n+1} among used elements
};

/// Top-n left singular subspaces of elements in the two outermost shells.
FlagSample sample_limit_flags(const WordBall& ball, int n);

/// Limit directions together with the hyperplanes of the limit flags, for
/// projective Anosov groups in any dimension.
struct LimitDirections {
  std::vector<Vector> directions;
  std::vector<Vector> hyperplane_normals;
};

/// Up to `count` well-spread attracting directions drawn from one shell of
/// the ball (farthest-point subsampling, deterministic).
LimitDirections sample_limit_directions(const WordBall& ball, int shell, std::size_t count);

enum class Mode { Flag, Satake };
enum class Verdict { Certified, Refuted, Inconclusive };

std::string to_string(Mode m);
std::string to_string(Verdict v);

struct TripleRecord {
  std::size_t x = 0;
  std::size_t z = 0;
  double t_star = 0.0;
  double lambda_max = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct DisjointnessCertificate {
  int depth = 0;
  Mode mode = Mode::Satake;
  std::vector<TripleRecord> triples;
  Verdict verdict = Verdict::Inconclusive;
  /// For a refutation: a PSD tensor (satake) or v v^T (flag) lying in both half-spaces.
  std::optional<Matrix> witness;
  std::optional<std::size_t> witness_triple;
  double worst_lambda = 0.0;
};

/// Minimizes lambda_max(t A1 + (1-t) A2) over [0,1] by golden section.
std::pair<double, double> pencil_minimum(const Matrix& a1, const Matrix& a2);

DisjointnessCertificate certify_disjoint_half_spaces(const WordBall& ball, const SpdPoint& o, int depth, Mode mode,
                                                     std::uint64_t seed = 0, int refutation_samples = 100000);

struct ConvexityProfile {
  std::vector<double> values;
  double epsilon = 0.0;
  /// (N, epsilon at stride N*D) for each coarsening that still leaves three points.
  std::vector<std::pair<int, double>> coarsened;
  bool coarsening_law_holds = true;
};

/// Largest epsilon >= 0 for which the sequence is epsilon-convex at critical
/// points: whenever s_{n+1} - s_n >= -eps, also s_{n+2} - s_{n+1} >= eps.
double convexity_epsilon(const std::vector<double>& s);

ConvexityProfile convexity_profile(const WordBall& ball, const SpdPoint& o, const Vector& wv,
                                   const std::vector<int>& word_path, int stride);

}  // namespace anosov::certify
