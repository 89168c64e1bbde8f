#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace posetab {

enum class Direction { Increasing, Decreasing };

std::string to_string(Direction d);
Direction opposite(Direction d);

struct PosetObject {
  std::string id;
  int degree = 0;

  friend bool operator==(const PosetObject&, const PosetObject&) = default;
};

using IdPair = std::pair<std::string, std::string>;

/// Nondegenerate simplex of the nerve: strictly ascending object indices.
struct Chain {
  std::vector<std::size_t> vertices;

  std::size_t dimension() const { return vertices.size() - 1; }
  std::size_t first() const { return vertices.front(); }
  std::size_t last() const { return vertices.back(); }

  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Finite graded poset given by its Hasse diagram. Degrees are kept as
/// declared, and also normalized to an increasing degree function
/// (`degree`) that every algorithm works with.
class GradedPoset {
 public:
  GradedPoset() = default;

  /// Throws DuplicateIdError, UnknownIdError, CycleError or DegreeError.
  static GradedPoset validate(std::vector<PosetObject> objects, const std::vector<IdPair>& covers,
                              Direction direction = Direction::Increasing);

  std::size_t size() const noexcept { return objects_.size(); }
  bool empty() const noexcept { return objects_.empty(); }

  const std::vector<PosetObject>& objects() const noexcept { return objects_; }
  const std::string& id(std::size_t i) const { return objects_[i].id; }
  /// Throws UnknownIdError.
  std::size_t index(const std::string& id) const;
  bool has(const std::string& id) const { return index_.contains(id); }

  Direction direction() const noexcept { return direction_; }
  /// Degree as given by the user (under the declared direction).
  int declared_degree(std::size_t i) const { return objects_[i].degree; }
  /// Increasing normal form of the degree.
  int degree(std::size_t i) const {
    return direction_ == Direction::Increasing ? objects_[i].degree : -objects_[i].degree;
  }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }

  /// Cover pairs (p, p') as object indices, in input order.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_[i]; }
  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_[i]; }
  bool is_cover(std::size_t p, std::size_t q) const;

  /// p <= q in the order (reflexive).
  bool leq(std::size_t p, std::size_t q) const { return closure_[p * size() + q] != 0; }
  bool less(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }

  /// Object indices sorted by id; fixes summand order everywhere.
  const std::vector<std::size_t>& id_order() const noexcept { return id_order_; }
  /// Object indices sorted by (increasing) degree, ties by id.
  const std::vector<std::size_t>& degree_order() const noexcept { return degree_order_; }

  /// Number of arrows in the longest chain.
  std::size_t longest_chain() const noexcept { return longest_chain_; }

  /// Same order and ids with the declared direction changed; declared
  /// degrees are negated so the normalized degree function is unchanged.
  GradedPoset redeclared(Direction d) const;

  /// Structural equality: same ids, degrees, covers (as a set) and direction.
  friend bool operator==(const GradedPoset& a, const GradedPoset& b);

 private:
  std::vector<PosetObject> objects_;
  std::map<std::string, std::size_t> index_;
  Direction direction_ = Direction::Increasing;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> lower_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<char> closure_;
  std::vector<std::size_t> id_order_;
  std::vector<std::size_t> degree_order_;
  int min_degree_ = 0;
  int max_degree_ = 0;
  std::size_t longest_chain_ = 0;
};

/// True iff (p, p') is a cover.
bool precedes(const GradedPoset& poset, const std::string& p, const std::string& q);

/// |deg(q) - deg(p)| for the arrow p -> q; throws NoArrowError when p is not <= q.
int hom_degree(const GradedPoset& poset, const std::string& p, const std::string& q);
int hom_degree(const GradedPoset& poset, std::size_t p, std::size_t q);

/// Strictly ascending chains with n+1 vertices, lexicographic in the id sequence.
std::vector<Chain> enumerate_chains(const GradedPoset& poset, std::size_t n);

/// Weakly ascending chains (degenerate simplices included), same ordering.
std::vector<Chain> enumerate_all_simplices(const GradedPoset& poset, std::size_t n);

/// Covers reversed; the declared direction flips, so that the normalized
/// degree function becomes its negative. Involutive.
GradedPoset opposite(const GradedPoset& poset);

struct DegreeBounds {
  int min_degree = 0;
  int max_degree = 0;
  int dimension = 0;

  friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

/// Bounds of the declared degrees. Throws EmptyPosetError.
DegreeBounds bounds(const GradedPoset& poset);

/// Assigns degrees by walking covers (+1 up, -1 down) per connected
/// component, each component starting at 0; throws DegreeError if no
/// grading exists.
GradedPoset infer_grading(const std::vector<std::string>& ids, const std::vector<IdPair>& covers);

/// Ids of objects in a chain, for messages and reports.
std::vector<std::string> chain_ids(const GradedPoset& poset, const Chain& chain);

/// Every object has at most one lower cover. The Hasse diagram is then a
/// union of rooted trees, so any family of cover maps is functorial.
bool is_hasse_forest(const GradedPoset& poset);

}  // namespace posetab
