#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "posetab/diagram.hpp"

namespace posetab {

enum class PosetFamily { Forest, Layered, SumsOfStandard };
enum class DiagramMode { FreeMapsOnForest, SumsOfStandard, PseudoProjectiveByConstruction };

std::string to_string(PosetFamily f);
std::string to_string(DiagramMode m);
/// Throws ValidationError for unknown names.
PosetFamily parse_family(const std::string& s);
DiagramMode parse_mode(const std::string& s);

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_objects = 6;
  int max_degree_span = 2;
  std::size_t max_group_rank = 2;
  long max_torsion_factor = 4;
  long max_matrix_entry = 3;
  /// SumsOfStandard posets are drawn like Layered ones.
  PosetFamily family = PosetFamily::Layered;
  /// Conjugate every object by a random unimodular matrix.
  bool scramble = true;
};

/// mt19937_64 with an explicit rejection sampler, so streams are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  /// True with probability num/den.
  bool chance(long num, long den) { return uniform(0, den - 1) < num; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

/// Random unimodular matrix and its inverse, as a product of elementary moves.
std::pair<Matrix, Matrix> random_unimodular(Rng& rng, std::size_t n, std::size_t moves);
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);

GradedPoset gen_poset(const GenConfig& cfg);

/// Throws FamilyMismatchError for FreeMapsOnForest on a poset whose Hasse
/// diagram is not a forest.
Diagram gen_diagram(const GenConfig& cfg, const GradedPoset& poset, DiagramMode mode);

/// a -> b, a -> c with degrees 0, 1, 1.
GradedPoset pushout_poset();
/// Objects a0 -> a1 -> ... with `length` arrows.
GradedPoset chain_poset(std::size_t length, Direction direction = Direction::Increasing);

}  // namespace posetab
