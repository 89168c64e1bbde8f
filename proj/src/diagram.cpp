#include "posetab/diagram.hpp"

#include <algorithm>

#include "posetab/error.hpp"

namespace posetab {

namespace {

std::string path_string(const GradedPoset& poset, const std::vector<std::size_t>& path) {
  std::string s;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) s += " -> ";
    s += poset.id(path[k]);
  }
  return s;
}

std::string cover_name(const GradedPoset& poset, std::size_t p, std::size_t q) {
  return poset.id(p) + "->" + poset.id(q);
}

}  // namespace

Diagram Diagram::validate(GradedPoset poset, std::vector<FgAbGroup> groups, std::map<CoverKey, AbHom> cover_maps) {
  if (groups.size() != poset.size())
    throw Error(ErrorKind::MissingData, "diagram has " + std::to_string(groups.size()) + " groups for " +
                                            std::to_string(poset.size()) + " objects");
  for (const auto& [key, h] : cover_maps) {
    if (key.first >= poset.size() || key.second >= poset.size() || !poset.is_cover(key.first, key.second))
      throw Error(ErrorKind::Validation, "map given for a pair that is not a cover");
  }
  for (const auto& [p, q] : poset.covers()) {
    auto it = cover_maps.find({p, q});
    if (it == cover_maps.end())
      throw Error(ErrorKind::MissingData, "no map for cover " + cover_name(poset, p, q));
    if (!it->second.source().same_presentation(groups[p]) || !it->second.target().same_presentation(groups[q]))
      throw Error(ErrorKind::Mismatch, "map for cover " + cover_name(poset, p, q) + " has the wrong endpoints");
  }

  Diagram f;
  f.poset_ = std::move(poset);
  f.groups_ = std::move(groups);
  f.cover_maps_ = std::move(cover_maps);
  const std::size_t n = f.poset_.size();
  f.composites_.assign(n * n, std::nullopt);
  std::vector<std::vector<std::size_t>> paths(n * n);

  for (std::size_t q : f.poset_.degree_order()) {
    f.composites_[q * n + q] = AbHom::identity(f.groups_[q]);
    paths[q * n + q] = {q};
    for (std::size_t r : f.poset_.lower_covers(q)) {
      const AbHom& step = f.cover_maps_.at({r, q});
      for (std::size_t p = 0; p < n; ++p) {
        if (!f.poset_.leq(p, r)) continue;
        AbHom candidate = compose(step, *f.composites_[p * n + r]);
        auto path = paths[p * n + r];
        path.push_back(q);
        auto& slot = f.composites_[p * n + q];
        if (!slot) {
          slot = std::move(candidate);
          paths[p * n + q] = std::move(path);
        } else if (!equal(*slot, candidate)) {
          throw Error(ErrorKind::Diamond, "paths " + path_string(f.poset_, paths[p * n + q]) + " and " +
                                              path_string(f.poset_, path) + " disagree: " +
                                              to_string(slot->matrix()) + " vs " + to_string(candidate.matrix()));
        }
      }
    }
  }
  return f;
}

const AbHom& Diagram::cover_map(std::size_t p, std::size_t q) const {
  auto it = cover_maps_.find({p, q});
  if (it == cover_maps_.end())
    throw Error(ErrorKind::NoArrow, "(" + poset_.id(p) + ", " + poset_.id(q) + ") is not a cover");
  return it->second;
}

const AbHom& Diagram::eval(std::size_t p, std::size_t q) const {
  if (!poset_.leq(p, q)) throw Error(ErrorKind::NoArrow, "no arrow " + poset_.id(p) + " -> " + poset_.id(q));
  return *composites_[p * size() + q];
}

bool operator==(const Diagram& a, const Diagram& b) {
  if (!(a.poset_ == b.poset_)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a.groups_[i].same_presentation(b.groups_[i])) return false;
  for (const auto& [key, h] : a.cover_maps_)
    if (!equal(h, b.cover_maps_.at(key))) return false;
  return true;
}

Diagram validate_functor(const GradedPoset& poset, const std::map<std::string, FgAbGroup>& groups,
                         const std::map<IdPair, AbHom>& cover_maps) {
  std::vector<FgAbGroup> gs;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    auto it = groups.find(poset.id(i));
    if (it == groups.end()) throw Error(ErrorKind::MissingData, "no group for object '" + poset.id(i) + "'");
    gs.push_back(it->second);
  }
  std::map<CoverKey, AbHom> maps;
  for (const auto& [key, h] : cover_maps) {
    const std::size_t p = poset.index(key.first), q = poset.index(key.second);
    if (!poset.is_cover(p, q))
      throw Error(ErrorKind::Validation, "map " + key.first + "->" + key.second + " is not on a cover");
    maps.emplace(CoverKey{p, q}, h);
  }
  return Diagram::validate(poset, std::move(gs), std::move(maps));
}

const AbHom& eval_hom(const Diagram& f, const std::string& p, const std::string& q) {
  return f.eval(f.poset().index(p), f.poset().index(q));
}

NatTransformation::NatTransformation(Diagram source, Diagram target, std::vector<AbHom> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!(source_.poset() == target_.poset()))
    throw Error(ErrorKind::Mismatch, "natural transformation between diagrams on different posets");
  if (components_.size() != source_.size())
    throw Error(ErrorKind::Mismatch, "natural transformation needs one component per object");
  const auto& poset = source_.poset();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!components_[i].source().same_presentation(source_.group(i)) ||
        !components_[i].target().same_presentation(target_.group(i)))
      throw Error(ErrorKind::Mismatch, "component at '" + poset.id(i) + "' has the wrong endpoints");
  }
  for (const auto& [p, q] : poset.covers()) {
    const AbHom lhs = compose(target_.cover_map(p, q), components_[p]);
    const AbHom rhs = compose(components_[q], source_.cover_map(p, q));
    if (!equal(lhs, rhs))
      throw Error(ErrorKind::NotNatural, "naturality square over " + cover_name(poset, p, q) + " fails: " +
                                             to_string(lhs.matrix()) + " vs " + to_string(rhs.matrix()));
  }
}

Subgroup im_at(const Diagram& f, std::size_t i0) {
  Matrix gens(f.group(i0).ambient_rank(), 0);
  for (std::size_t p : f.poset().lower_covers(i0)) gens = hcat(gens, f.cover_map(p, i0).matrix());
  return Subgroup(f.group(i0), std::move(gens));
}

Subgroup im_at_all_arrows(const Diagram& f, std::size_t i0) {
  Matrix gens(f.group(i0).ambient_rank(), 0);
  for (std::size_t p = 0; p < f.size(); ++p)
    if (f.poset().less(p, i0)) gens = hcat(gens, f.eval(p, i0).matrix());
  return Subgroup(f.group(i0), std::move(gens));
}

QuotientResult coker_at(const Diagram& f, std::size_t i0) { return quotient(f.group(i0), im_at(f, i0)); }

namespace {

Subgroup joint_kernel(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& targets) {
  const FgAbGroup& g = f.group(i0);
  if (targets.empty()) return Subgroup::whole(g);
  Matrix stacked(0, g.ambient_rank());
  std::vector<Matrix> rels;
  for (std::size_t q : targets) {
    stacked = vcat(stacked, f.eval(i0, q).matrix());
    rels.push_back(f.group(q).relations());
  }
  const Lattice k = Lattice::preimage(stacked, Lattice::from_generators(block_diagonal(rels)));
  return subgroup_from_lattice(g, k);
}

}  // namespace

Subgroup ker_at(const Diagram& f, std::size_t i0) {
  std::vector<std::size_t> targets;
  for (std::size_t q = 0; q < f.size(); ++q)
    if (f.poset().less(i0, q)) targets.push_back(q);
  return joint_kernel(f, i0, targets);
}

Subgroup ker_at_covers(const Diagram& f, std::size_t i0) { return joint_kernel(f, i0, f.poset().upper_covers(i0)); }

QuotientResult coim_at(const Diagram& f, std::size_t i0) { return quotient(f.group(i0), ker_at(f, i0)); }

CokerFunctor coker_functor(const Diagram& f) {
  std::vector<FgAbGroup> groups;
  std::vector<AbHom> sigma;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto q = coker_at(f, i);
    groups.push_back(q.group);
    sigma.push_back(q.projection);
  }
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : f.poset().covers()) maps.emplace(CoverKey{p, q}, AbHom::zero(groups[p], groups[q]));
  Diagram c = Diagram::validate(f.poset(), groups, std::move(maps));
  NatTransformation s(f, c, std::move(sigma));
  return {std::move(c), std::move(s)};
}

CokerPrimeFunctor coker_prime_functor(const Diagram& f) {
  const auto& poset = f.poset();
  const std::size_t n = f.size();
  std::vector<FgAbGroup> coker(n);
  for (std::size_t i = 0; i < n; ++i) coker[i] = coker_at(f, i).group;

  CokerPrimeFunctor out;
  out.summand_sources.resize(n);
  std::vector<DirectSum> sums(n);
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    std::vector<FgAbGroup> parts;
    for (std::size_t i : poset.id_order())
      if (poset.leq(i, i0)) {
        out.summand_sources[i0].push_back(i);
        parts.push_back(coker[i]);
      }
    sums[i0] = direct_sum(parts);
  }
  auto slot = [&](std::size_t i0, std::size_t source) {
    const auto& src = out.summand_sources[i0];
    return static_cast<std::size_t>(std::find(src.begin(), src.end(), source) - src.begin());
  };

  // Along β: i0 -> i1 the summand of α: i -> i0 goes identically to the
  // summand of β∘α: i -> i1.
  std::map<CoverKey, AbHom> maps;
  for (const auto& [i0, i1] : poset.covers()) {
    Matrix m(sums[i1].group.ambient_rank(), sums[i0].group.ambient_rank());
    for (std::size_t k = 0; k < out.summand_sources[i0].size(); ++k) {
      const std::size_t source = out.summand_sources[i0][k];
      const std::size_t from = sums[i0].offsets[k];
      const std::size_t to = sums[i1].offsets[slot(i1, source)];
      for (std::size_t t = 0; t < coker[source].ambient_rank(); ++t) m(to + t, from + t) = 1;
    }
    maps.emplace(CoverKey{i0, i1}, AbHom(sums[i0].group, sums[i1].group, std::move(m)));
  }
  std::vector<FgAbGroup> groups;
  std::vector<AbHom> pi;
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    groups.push_back(sums[i0].group);
    pi.push_back(sums[i0].projections[slot(i0, i0)]);
  }
  out.diagram = Diagram::validate(poset, std::move(groups), std::move(maps));
  out.pi = NatTransformation(out.diagram, coker_functor(f).diagram, std::move(pi));
  return out;
}

Diagram representable(const GradedPoset& poset, std::size_t c) {
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 0; i < poset.size(); ++i)
    groups.push_back(poset.leq(c, i) ? FgAbGroup::free(1) : FgAbGroup::trivial());
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers()) {
    Matrix m(groups[q].ambient_rank(), groups[p].ambient_rank());
    if (m.rows() == 1 && m.cols() == 1) m(0, 0) = 1;
    maps.emplace(CoverKey{p, q}, AbHom(groups[p], groups[q], std::move(m)));
  }
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

Diagram skyscraper(const GradedPoset& poset, std::size_t i0, const FgAbGroup& a) {
  std::vector<FgAbGroup> groups(poset.size());
  groups[i0] = a;
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers()) maps.emplace(CoverKey{p, q}, AbHom::zero(groups[p], groups[q]));
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

Diagram constant(const GradedPoset& poset, const FgAbGroup& a) {
  std::vector<FgAbGroup> groups(poset.size(), a);
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers()) maps.emplace(CoverKey{p, q}, AbHom::identity(a));
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

Diagram build_standard_diagram(StandardKind kind, const GradedPoset& poset, const std::string& object,
                               const FgAbGroup& group) {
  switch (kind) {
    case StandardKind::Representable:
      return representable(poset, poset.index(object));
    case StandardKind::Skyscraper:
      return skyscraper(poset, poset.index(object), group);
    case StandardKind::Constant:
      return constant(poset, group);
  }
  throw std::logic_error("unknown standard diagram kind");
}

Diagram direct_sum(const std::vector<Diagram>& parts) {
  if (parts.empty()) throw Error(ErrorKind::MissingData, "direct sum of no diagrams");
  const GradedPoset& poset = parts.front().poset();
  for (const auto& d : parts)
    if (!(d.poset() == poset)) throw Error(ErrorKind::Mismatch, "direct sum of diagrams on different posets");
  std::vector<FgAbGroup> groups;
  std::vector<DirectSum> sums;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    std::vector<FgAbGroup> gs;
    for (const auto& d : parts) gs.push_back(d.group(i));
    sums.push_back(direct_sum(gs));
    groups.push_back(sums.back().group);
  }
  std::map<CoverKey, AbHom> maps;
  for (const auto& [p, q] : poset.covers()) {
    std::vector<Matrix> blocks;
    for (const auto& d : parts) blocks.push_back(d.cover_map(p, q).matrix());
    maps.emplace(CoverKey{p, q}, AbHom(groups[p], groups[q], block_diagonal(blocks)));
  }
  return Diagram::validate(poset, std::move(groups), std::move(maps));
}

Diagram change_presentation(const Diagram& f, const std::vector<Matrix>& u, const std::vector<Matrix>& u_inv) {
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 0; i < f.size(); ++i)
    groups.emplace_back(f.group(i).ambient_rank(), u[i] * f.group(i).relations());
  std::map<CoverKey, AbHom> maps;
  for (const auto& [key, h] : f.cover_maps())
    maps.emplace(key, AbHom(groups[key.first], groups[key.second], u[key.second] * h.matrix() * u_inv[key.first]));
  return Diagram::validate(f.poset(), std::move(groups), std::move(maps));
}

NatTransformation check_adjunction_instance(const Diagram& f, std::size_t i0, const FgAbGroup& a, const AbHom& h) {
  const auto q = coker_at(f, i0);
  if (!h.source().same_presentation(q.group) || !h.target().same_presentation(a))
    throw Error(ErrorKind::Mismatch, "h must map Coker_F(i0) to A");
  Diagram sky = skyscraper(f.poset(), i0, a);
  std::vector<AbHom> comps;
  for (std::size_t i = 0; i < f.size(); ++i)
    comps.push_back(i == i0 ? AbHom(f.group(i), a, h.matrix() * q.projection.matrix())
                            : AbHom::zero(f.group(i), sky.group(i)));
  return NatTransformation(f, std::move(sky), std::move(comps));
}

AbHom factor_through_coker(const NatTransformation& eta, std::size_t i0) {
  const auto q = coker_at(eta.source(), i0);
  try {
    return AbHom(q.group, eta.target().group(i0), eta.component(i0).matrix());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotWellDefined) throw;
    throw Error(ErrorKind::NotNatural, "component at '" + eta.source().poset().id(i0) +
                                           "' does not vanish on the image of the incoming arrows");
  }
}

Diagram dual_diagram(const Diagram& f) {
  const GradedPoset op = opposite(f.poset());
  // Homomorphisms Z^g/R -> Z are the integer columns phi with phi^T R = 0.
  std::vector<Lattice> duals;
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 0; i < f.size(); ++i) {
    duals.push_back(Lattice::from_generators(integer_kernel(f.group(i).relations().transpose())));
    if (duals.back().dimension() != f.group(i).ambient_rank())
      duals.back() = Lattice(f.group(i).ambient_rank());
    groups.push_back(FgAbGroup::free(duals.back().rank()));
  }
  std::map<CoverKey, AbHom> maps;
  for (const auto& [key, h] : f.cover_maps()) {
    const auto [p, q] = key;
    const Matrix pulled = h.matrix().transpose() * duals[q].basis();
    Matrix m(duals[p].rank(), duals[q].rank());
    for (std::size_t c = 0; c < pulled.cols(); ++c) {
      auto x = duals[p].coordinates(pulled.column(c));
      if (!x) throw std::logic_error("dual_diagram: pulled-back functional leaves the dual lattice");
      m.set_column(c, *x);
    }
    maps.emplace(CoverKey{q, p}, AbHom(groups[q], groups[p], std::move(m)));
  }
  return Diagram::validate(op, std::move(groups), std::move(maps));
}

}  // namespace posetab
