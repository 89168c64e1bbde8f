#include "posetab/classify.hpp"

#include "posetab/error.hpp"

namespace posetab {

namespace {

std::vector<std::size_t> family_below(const Diagram& f, std::size_t i0, int d) {
  std::vector<std::size_t> out;
  const auto& poset = f.poset();
  for (std::size_t i : poset.id_order())
    if (poset.leq(i, i0) && poset.degree(i0) - poset.degree(i) == d) out.push_back(i);
  return out;
}

std::vector<std::size_t> family_above(const Diagram& f, std::size_t i0, int d) {
  std::vector<std::size_t> out;
  const auto& poset = f.poset();
  for (std::size_t j : poset.id_order())
    if (poset.leq(i0, j) && poset.degree(j) - poset.degree(i0) == d) out.push_back(j);
  return out;
}

Witness split(const Diagram& f, const std::vector<std::size_t>& family, std::span<const Integer> v) {
  Witness w;
  std::size_t offset = 0;
  for (std::size_t i : family) {
    const std::size_t r = f.group(i).ambient_rank();
    w.objects.push_back(f.poset().id(i));
    w.components.emplace_back(v.begin() + static_cast<long>(offset), v.begin() + static_cast<long>(offset + r));
    offset += r;
  }
  return w;
}

std::optional<Witness> projective_failure(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& family) {
  if (family.empty()) return std::nullopt;
  Matrix phi(f.group(i0).ambient_rank(), 0);
  std::vector<Matrix> images;
  for (std::size_t i : family) {
    phi = hcat(phi, f.eval(i, i0).matrix());
    images.push_back(im_at(f, i).lattice().basis());
  }
  const Lattice k = Lattice::preimage(phi, f.group(i0).relation_lattice());
  const Lattice allowed = Lattice::from_generators(block_diagonal(images));
  for (std::size_t c = 0; c < k.rank(); ++c)
    if (!allowed.contains(k.basis().column(c))) return split(f, family, k.basis().column(c));
  return std::nullopt;
}

std::optional<Witness> injective_failure(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& family) {
  if (family.empty()) return std::nullopt;
  Matrix psi(0, f.group(i0).ambient_rank());
  std::vector<Matrix> kernels, relations;
  for (std::size_t j : family) {
    psi = vcat(psi, f.eval(i0, j).matrix());
    kernels.push_back(ker_at(f, j).lattice().basis());
    relations.push_back(f.group(j).relations());
  }
  const Lattice required = Lattice::from_generators(block_diagonal(kernels));
  const Lattice reachable = Lattice::from_generators(hcat(psi, block_diagonal(relations)));
  for (std::size_t c = 0; c < required.rank(); ++c)
    if (!reachable.contains(required.basis().column(c))) return split(f, family, required.basis().column(c));
  return std::nullopt;
}

template <typename Family, typename Failure>
PseudoVerdict run_all(const Diagram& f, Family family_of, Failure failure_of) {
  PseudoVerdict v;
  if (f.poset().empty()) return v;
  const int dim = f.poset().max_degree() - f.poset().min_degree();
  for (std::size_t i0 : f.poset().id_order())
    for (int d = 1; d <= dim; ++d) {
      PseudoCheck c;
      c.object = i0;
      c.d = d;
      c.family = family_of(f, i0, d);
      if (c.family.empty()) continue;
      c.witness = failure_of(f, i0, c.family);
      c.holds = !c.witness;
      if (!c.holds && v.holds) {
        v.holds = false;
        v.failure = c;
      }
      v.checks.push_back(std::move(c));
    }
  return v;
}

}  // namespace

PseudoCheck is_pseudo_projective_at(const Diagram& f, std::size_t i0, int d) {
  PseudoCheck c;
  c.object = i0;
  c.d = d;
  if (d <= 0) return c;
  c.family = family_below(f, i0, d);
  c.witness = projective_failure(f, i0, c.family);
  c.holds = !c.witness;
  return c;
}

PseudoCheck is_pseudo_projective_at(const Diagram& f, const std::string& i0, int d) {
  return is_pseudo_projective_at(f, f.poset().index(i0), d);
}

PseudoCheck is_pseudo_injective_at(const Diagram& f, std::size_t i0, int d) {
  PseudoCheck c;
  c.object = i0;
  c.d = d;
  if (d <= 0) return c;
  c.family = family_above(f, i0, d);
  c.witness = injective_failure(f, i0, c.family);
  c.holds = !c.witness;
  return c;
}

PseudoCheck is_pseudo_injective_at(const Diagram& f, const std::string& i0, int d) {
  return is_pseudo_injective_at(f, f.poset().index(i0), d);
}

bool pseudo_projective_on_family(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& family) {
  return !projective_failure(f, i0, family);
}

bool pseudo_injective_on_family(const Diagram& f, std::size_t i0, const std::vector<std::size_t>& family) {
  return !injective_failure(f, i0, family);
}

PseudoVerdict is_pseudo_projective(const Diagram& f) { return run_all(f, family_below, projective_failure); }

PseudoVerdict is_pseudo_injective(const Diagram& f) { return run_all(f, family_above, injective_failure); }

StructureVerdict is_projective(const Diagram& f) {
  StructureVerdict v;
  for (std::size_t i : f.poset().id_order()) {
    const GroupInvariants inv = coker_at(f, i).group.invariants();
    if (!inv.is_free()) {
      v.holds = false;
      v.object = i;
      v.reason = "Coker_F(" + f.poset().id(i) + ") = " + to_string(inv) + " is not free";
      return v;
    }
  }
  PseudoVerdict pp = is_pseudo_projective(f);
  if (!pp.holds) {
    v.holds = false;
    v.object = pp.failure->object;
    v.reason = "not " + std::to_string(pp.failure->d) + "-pseudo-projective at " + f.poset().id(pp.failure->object);
    v.pseudo_failure = pp.failure;
  }
  return v;
}

StructureVerdict is_injective(const Diagram& f) {
  StructureVerdict v;
  for (std::size_t i : f.poset().id_order()) {
    const FgAbGroup k = ker_at(f, i).as_group();
    if (!classify_group(k).is_injective_in_ab) {
      v.holds = false;
      v.object = i;
      v.reason = "ker_F(" + f.poset().id(i) + ") = " + to_string(k.invariants()) + " is not injective in Ab";
      return v;
    }
  }
  PseudoVerdict pi = is_pseudo_injective(f);
  if (!pi.holds) {
    v.holds = false;
    v.object = pi.failure->object;
    v.reason = "not " + std::to_string(pi.failure->d) + "-pseudo-injective at " + f.poset().id(pi.failure->object);
    v.pseudo_failure = pi.failure;
  }
  return v;
}

ClassificationReport classify(const Diagram& f) {
  ClassificationReport r;
  bool cokernels_free = true, kernels_trivial = true;
  for (std::size_t i : f.poset().id_order()) {
    ObjectReport o;
    o.id = f.poset().id(i);
    o.degree = f.poset().declared_degree(i);
    o.group = f.group(i).invariants();
    o.image = im_at(f, i).as_group().invariants();
    o.cokernel = coker_at(f, i).group.invariants();
    o.kernel = ker_at(f, i).as_group().invariants();
    o.coimage = coim_at(f, i).group.invariants();
    cokernels_free = cokernels_free && o.cokernel.is_free();
    kernels_trivial = kernels_trivial && o.kernel.is_trivial();
    r.objects.push_back(std::move(o));
  }
  r.pseudo_projective = is_pseudo_projective(f);
  r.pseudo_injective = is_pseudo_injective(f);
  r.projective = is_projective(f);
  r.injective = is_injective(f);
  r.colim = is_acyclic(f, LimitKind::Colim);
  r.lim = is_acyclic(f, LimitKind::Lim);
  r.structure_consistent = (!r.projective.holds || (r.pseudo_projective.holds && cokernels_free)) &&
                           (!r.injective.holds || (r.pseudo_injective.holds && kernels_trivial)) &&
                           (r.projective.holds == (r.pseudo_projective.holds && cokernels_free)) &&
                           (r.injective.holds == (r.pseudo_injective.holds && kernels_trivial));
  r.oracle = {r.pseudo_projective.holds, r.colim.acyclic, r.pseudo_injective.holds, r.lim.acyclic};
  return r;
}

OracleVerdict oracle_acyclicity(const Diagram& f) {
  OracleVerdict v;
  v.pseudo_projective = is_pseudo_projective(f).holds;
  const AcyclicityResult colim = is_acyclic(f, LimitKind::Colim);
  v.colim_acyclic = colim.acyclic;
  v.pseudo_injective = is_pseudo_injective(f).holds;
  const AcyclicityResult lim = is_acyclic(f, LimitKind::Lim);
  v.lim_acyclic = lim.acyclic;
  if (v.pseudo_projective && !v.colim_acyclic)
    throw Error(ErrorKind::OracleViolation, "pseudo-projective diagram has colim_" + std::to_string(*colim.degree) +
                                                " = " + to_string(colim.group));
  if (v.pseudo_injective && !v.lim_acyclic)
    throw Error(ErrorKind::OracleViolation,
                "pseudo-injective diagram has lim^" + std::to_string(*lim.degree) + " = " + to_string(lim.group));
  return v;
}

}  // namespace posetab
