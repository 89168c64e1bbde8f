#include "posetab/randgen.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>

#include "posetab/classify.hpp"
#include "posetab/error.hpp"

namespace posetab {

std::string to_string(PosetFamily f) {
  switch (f) {
    case PosetFamily::Forest: return "forest";
    case PosetFamily::Layered: return "layered";
    case PosetFamily::SumsOfStandard: return "sums_of_standard";
  }
  return "?";
}

std::string to_string(DiagramMode m) {
  switch (m) {
    case DiagramMode::FreeMapsOnForest: return "free_maps_on_forest";
    case DiagramMode::SumsOfStandard: return "sums_of_standard";
    case DiagramMode::PseudoProjectiveByConstruction: return "pseudo_projective_by_construction";
  }
  return "?";
}

PosetFamily parse_family(const std::string& s) {
  for (auto f : {PosetFamily::Forest, PosetFamily::Layered, PosetFamily::SumsOfStandard})
    if (to_string(f) == s) return f;
  throw Error(ErrorKind::Validation, "unknown poset family '" + s + "'");
}

DiagramMode parse_mode(const std::string& s) {
  for (auto m : {DiagramMode::FreeMapsOnForest, DiagramMode::SumsOfStandard,
                 DiagramMode::PseudoProjectiveByConstruction})
    if (to_string(m) == s) return m;
  throw Error(ErrorKind::Validation, "unknown diagram mode '" + s + "'");
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::logic_error("Rng::uniform: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<long>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<long>(x % range);
}

std::pair<Matrix, Matrix> random_unimodular(Rng& rng, std::size_t n, std::size_t moves) {
  Matrix u = Matrix::identity(n), inv = Matrix::identity(n);
  if (n == 0) return {u, inv};
  for (std::size_t k = 0; k < moves; ++k) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    const std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    const long kind = rng.uniform(0, 4);
    if (kind == 0) {
      u.swap_rows(i, j);
      inv.swap_columns(i, j);
    } else if (kind == 1) {
      u.negate_row(i);
      inv.negate_column(i);
    } else if (i != j) {
      // E = I + c·e_i e_j^T acts on rows of u; its inverse on columns of inv.
      const long c = rng.chance(1, 2) ? 1 : -1;
      u.add_row_multiple(i, j, c);
      inv.add_column_multiple(j, i, -c);
    }
  }
  return {u, inv};
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = rng.uniform(-bound, bound);
  return m;
}

namespace {

std::string object_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "v%02zu", k);
  return buf;
}

// Groups are drawn in diagonal form; torsion[k] = 0 marks a free generator.
struct DiagonalGroup {
  std::vector<long> torsion;

  FgAbGroup group() const {
    Matrix rel(torsion.size(), 0);
    for (std::size_t k = 0; k < torsion.size(); ++k)
      if (torsion[k] > 0) {
        Vector col(torsion.size());
        col[k] = torsion[k];
        rel.append_column(col);
      }
    return FgAbGroup(torsion.size(), std::move(rel));
  }
};

DiagonalGroup random_group(Rng& rng, const GenConfig& cfg) {
  DiagonalGroup g;
  const long rank = rng.uniform(0, static_cast<long>(cfg.max_group_rank));
  for (long k = 0; k < rank; ++k)
    g.torsion.push_back(cfg.max_torsion_factor >= 2 && rng.chance(1, 3) ? rng.uniform(2, cfg.max_torsion_factor) : 0);
  return g;
}

// Random matrix made well defined: an entry from a generator of order t into
// a coordinate of order u must be a multiple of u / gcd(t, u); into a free
// coordinate it must vanish.
Matrix random_hom(Rng& rng, const DiagonalGroup& src, const DiagonalGroup& dst, long bound) {
  Matrix m = random_matrix(rng, dst.torsion.size(), src.torsion.size(), bound);
  for (std::size_t k = 0; k < src.torsion.size(); ++k) {
    const long t = src.torsion[k];
    if (t == 0) continue;
    for (std::size_t l = 0; l < dst.torsion.size(); ++l) {
      const long u = dst.torsion[l];
      if (u == 0) {
        m(l, k) = 0;
      } else {
        const long step = u / std::gcd(t, u);
        m(l, k) -= m(l, k) % step;
      }
    }
  }
  return m;
}

Diagram scramble(Rng& rng, const Diagram& f) {
  std::vector<Matrix> u, inv;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t n = f.group(i).ambient_rank();
    auto [a, b] = random_unimodular(rng, n, 2 * n);
    u.push_back(std::move(a));
    inv.push_back(std::move(b));
  }
  return change_presentation(f, u, inv);
}

Diagram free_maps(Rng& rng, const GenConfig& cfg, const GradedPoset& poset) {
  std::vector<DiagonalGroup> dg;
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    dg.push_back(random_group(rng, cfg));
    groups.push_back(dg.back().group());
  }
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers())
    maps.emplace(CoverKey{p, q}, AbHom(groups[p], groups[q], random_hom(rng, dg[p], dg[q], cfg.max_matrix_entry)));
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

Diagram sums_of_standard(Rng& rng, const GenConfig& cfg, const GradedPoset& poset) {
  std::vector<Diagram> parts;
  const long k = rng.uniform(1, 3);
  for (long s = 0; s < k; ++s) {
    const std::size_t obj = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(poset.size()) - 1));
    switch (rng.uniform(0, 2)) {
      case 0:
        parts.push_back(representable(poset, obj));
        break;
      case 1:
        parts.push_back(skyscraper(poset, obj, random_group(rng, cfg).group()));
        break;
      default:
        parts.push_back(constant(poset, random_group(rng, cfg).group()));
        break;
    }
  }
  return direct_sum(parts);
}

// Z on the up-set of c with F(p -> q) = q^(e_q - e_p), e weakly increasing.
Diagram scaled_representable(Rng& rng, const GradedPoset& poset, std::size_t c) {
  const long base = rng.uniform(2, 3);
  std::vector<long> e(poset.size(), 0);
  for (std::size_t i : poset.degree_order()) {
    if (i == c || !poset.leq(c, i)) continue;
    long lo = 0;
    for (std::size_t r : poset.lower_covers(i))
      if (poset.leq(c, r)) lo = std::max(lo, e[r]);
    e[i] = lo + rng.uniform(0, 1);
  }
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 0; i < poset.size(); ++i)
    groups.push_back(poset.leq(c, i) ? FgAbGroup::free(1) : FgAbGroup::trivial());
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers()) {
    Matrix m(groups[q].ambient_rank(), groups[p].ambient_rank());
    if (m.rows() == 1 && m.cols() == 1) {
      Integer w;
      mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e[q] - e[p]));
      m(0, 0) = w;
    }
    maps.emplace(CoverKey{p, q}, AbHom(groups[p], groups[q], std::move(m)));
  }
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

// Free groups with injective cover maps; on a Hasse forest nothing else is needed.
Diagram mono_forest(Rng& rng, const GenConfig& cfg, const GradedPoset& poset) {
  std::vector<std::size_t> rank(poset.size(), 0);
  for (std::size_t i : poset.degree_order()) {
    const auto& lower = poset.lower_covers(i);
    rank[i] = lower.empty() ? static_cast<std::size_t>(rng.uniform(0, static_cast<long>(cfg.max_group_rank)))
                            : rank[lower.front()] + static_cast<std::size_t>(rng.uniform(0, 1));
  }
  std::vector<FgAbGroup> groups;
  for (std::size_t r : rank) groups.push_back(FgAbGroup::free(r));
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers()) {
    Matrix m;
    do m = random_matrix(rng, rank[q], rank[p], std::max(1L, cfg.max_matrix_entry));
    while (column_echelon(m, false).rank != rank[p]);
    maps.emplace(CoverKey{p, q}, AbHom(groups[p], groups[q], std::move(m)));
  }
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

Diagram pseudo_projective(Rng& rng, const GenConfig& cfg, const GradedPoset& poset) {
  const bool forest = is_hasse_forest(poset);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Diagram> parts;
    const long k = rng.uniform(1, 3);
    for (long s = 0; s < k; ++s) {
      const std::size_t c = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(poset.size()) - 1));
      if (forest && rng.chance(1, 2)) {
        parts.push_back(mono_forest(rng, cfg, poset));
        continue;
      }
      Diagram piece = representable(poset, c);
      for (int tries = 0; tries < 6; ++tries) {
        Diagram cand = scaled_representable(rng, poset, c);
        if (is_pseudo_projective(cand).holds) {
          piece = std::move(cand);
          break;
        }
      }
      parts.push_back(std::move(piece));
    }
    Diagram f = direct_sum(parts);
    if (is_pseudo_projective(f).holds) return f;
  }
  std::vector<Diagram> reps;
  for (std::size_t c = 0; c < poset.size(); ++c)
    if (rng.chance(1, 2) || (c + 1 == poset.size() && reps.empty())) reps.push_back(representable(poset, c));
  return direct_sum(reps);
}

}  // namespace

GradedPoset gen_poset(const GenConfig& cfg) {
  if (cfg.max_objects < 1) throw Error(ErrorKind::Validation, "max_objects must be at least 1");
  Rng rng(cfg.seed);
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(cfg.max_objects)));
  const int span = std::max(0, cfg.max_degree_span);
  std::vector<PosetObject> objects;
  std::vector<IdPair> covers;
  if (cfg.family == PosetFamily::Forest) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::size_t> parents;
      for (std::size_t j = 0; j < k; ++j)
        if (objects[j].degree < span) parents.push_back(j);
      if (!parents.empty() && rng.chance(2, 3)) {
        const std::size_t j = rng.pick(parents);
        objects.push_back({object_name(k), objects[j].degree + 1});
        covers.emplace_back(objects[j].id, objects[k].id);
      } else {
        objects.push_back({object_name(k), static_cast<int>(rng.uniform(0, span))});
      }
    }
  } else {
    const std::size_t layers = std::min<std::size_t>(n, static_cast<std::size_t>(rng.uniform(0, span)) + 1);
    std::vector<std::vector<std::size_t>> by_layer(layers);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t layer = k < layers ? k : static_cast<std::size_t>(rng.uniform(0, static_cast<long>(layers) - 1));
      objects.push_back({object_name(k), static_cast<int>(layer)});
      by_layer[layer].push_back(k);
    }
    for (std::size_t layer = 1; layer < layers; ++layer)
      for (std::size_t k : by_layer[layer]) {
        std::vector<std::size_t> chosen;
        for (std::size_t j : by_layer[layer - 1])
          if (rng.chance(1, 2)) chosen.push_back(j);
        if (chosen.empty()) chosen.push_back(rng.pick(by_layer[layer - 1]));
        for (std::size_t j : chosen) covers.emplace_back(objects[j].id, objects[k].id);
      }
  }
  return GradedPoset::validate(std::move(objects), covers, Direction::Increasing);
}

Diagram gen_diagram(const GenConfig& cfg, const GradedPoset& poset, DiagramMode mode) {
  if (poset.empty()) throw Error(ErrorKind::EmptyPoset, "cannot generate a diagram on an empty poset");
  Rng rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(mode) + 1)));
  Diagram f;
  switch (mode) {
    case DiagramMode::FreeMapsOnForest:
      if (!is_hasse_forest(poset))
        throw Error(ErrorKind::FamilyMismatch, "free_maps_on_forest needs a poset whose Hasse diagram is a forest");
      f = free_maps(rng, cfg, poset);
      break;
    case DiagramMode::SumsOfStandard:
      f = sums_of_standard(rng, cfg, poset);
      break;
    case DiagramMode::PseudoProjectiveByConstruction:
      f = pseudo_projective(rng, cfg, poset);
      break;
  }
  return cfg.scramble ? scramble(rng, f) : f;
}

GradedPoset pushout_poset() {
  return GradedPoset::validate({{"a", 0}, {"b", 1}, {"c", 1}}, {{"a", "b"}, {"a", "c"}});
}

GradedPoset chain_poset(std::size_t length, Direction direction) {
  std::vector<PosetObject> objects;
  std::vector<IdPair> covers;
  for (std::size_t i = 0; i <= length; ++i) {
    const int deg = direction == Direction::Increasing ? static_cast<int>(i) : static_cast<int>(length - i);
    objects.push_back({"a" + std::to_string(i), deg});
    if (i > 0) covers.emplace_back("a" + std::to_string(i - 1), "a" + std::to_string(i));
  }
  return GradedPoset::validate(std::move(objects), covers, direction);
}

}  // namespace posetab
