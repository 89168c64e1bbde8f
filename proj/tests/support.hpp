#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "posetab/abgroup.hpp"

#ifndef POSETAB_SOURCE_DIR
#define POSETAB_SOURCE_DIR "."
#endif

namespace posetab::testing {

inline GroupInvariants inv(std::size_t free_rank, std::vector<long> torsion) {
  GroupInvariants g;
  g.free_rank = free_rank;
  for (long t : torsion) g.torsion.emplace_back(t);
  return g;
}

inline std::string gallery_path(const std::string& name) { return std::string(POSETAB_SOURCE_DIR) + "/gallery/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Diagonal, nonnegative, each nonzero entry dividing the next, zeros last.
inline bool is_smith_diagonal(const Matrix& d) {
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t c = 0; c < d.cols(); ++c)
    for (std::size_t r = 0; r < d.rows(); ++r)
      if (r != c && d(r, c) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < k) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
      if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
  }
  return true;
}

}  // namespace posetab::testing
