#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "anosov/linalg.hpp"
#include "anosov/rational.hpp"

namespace anosov::groups {

/// Finitely generated subgroup of GL(d,R) with |det| = 1 generators. After
/// construction the generating set is closed under inverses.
struct GroupSpec {
  std::string name;
  int dim = 0;
  bool projective = false;
  bool symmetrized = true;
  std::vector<Matrix> generators;
  std::vector<Matrix> generator_inverses;
  /// inverse_of[i] is the index of the inverse of generator i.
  std::vector<int> inverse_of;
  /// Present iff every generator has rational entries.
  std::optional<std::vector<RationalMatrix>> exact;
  std::optional<std::vector<RationalMatrix>> exact_inverses;

  bool rational() const { return exact.has_value(); }
  std::size_t size() const { return generators.size(); }
};

/// Builds a spec from exact generators, checking det = +-1 exactly and
/// appending missing inverses.
GroupSpec make_spec(std::string name, std::vector<RationalMatrix> generators, bool projective = false);
/// Floating-point variant; |det| must be within 1e-9 of 1.
GroupSpec make_spec(std::string name, std::vector<Matrix> generators, bool projective = false);

/// {"name": str, "dim": int, "projective": bool, "generators": [[row...]...]}
GroupSpec parse_group(const nlohmann::json& doc);

struct GroupElement {
  Matrix matrix;
  Matrix inverse;
  std::vector<int> word;
  int length = 0;
};

struct WordBall {
  GroupSpec spec;
  int radius = 0;
  std::vector<GroupElement> elements;
  /// Parallel to `elements` in rational mode, empty otherwise.
  std::vector<RationalMatrix> exact;
  std::vector<RationalMatrix> exact_inverse;
  std::vector<std::size_t> shell_sizes;

  /// Index of the first element of each shell; shell L is [begin[L], begin[L+1]).
  std::vector<std::size_t> shell_begin;

  std::optional<std::size_t> find(const std::string& key) const;
  std::string key_of(std::size_t index) const;

  std::unordered_map<std::string, std::size_t> index;
};

/// Default cap on the number of ball elements, overridable by ANOSOV_CAP.
std::size_t default_ball_cap();

/// Breadth-first enumeration of all elements of word length <= radius.
WordBall word_ball(const GroupSpec& spec, int radius, std::optional<std::size_t> cap = std::nullopt);

/// Canonical deduplication key for a floating-point matrix.
std::string float_key(const Matrix& m, bool projective);
/// Canonical key for an exact matrix.
std::string exact_key(const RationalMatrix& m, bool projective);

struct Triple {
  std::size_t x;
  std::size_t z;
};

/// All ordered pairs (x, z) of length-D elements with |x^{-1} z| = 2D.
std::vector<Triple> geodesic_triples(const WordBall& ball, int depth);

/// Matrix of the product of generators along `word`.
Matrix word_matrix(const GroupSpec& spec, const std::vector<int>& word);

/// k-th symmetric power of a 2x2 matrix in the monomial basis x^{k-i} y^i.
Matrix symmetric_power(const Matrix& g, int k);
RationalMatrix symmetric_power(const RationalMatrix& g, int k);

/// Built-in fixture families. `params` are the colon-separated arguments
/// after the fixture name, e.g. fixture("schottky-sl2", {"3"}).
GroupSpec fixture(std::string_view name, const std::vector<std::string>& params);

/// Resolves "fx:name:param:...". Nested fixtures consume the remainder.
GroupSpec fixture_from_string(std::string_view text);

/// The form diag(1,1,-1) preserved by the so21-integral-lattice fixture.
Matrix so21_form();

}  // namespace anosov::groups
