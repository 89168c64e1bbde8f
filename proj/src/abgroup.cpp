#include "posetab/abgroup.hpp"

#include <sstream>
#include <stdexcept>

#include "posetab/error.hpp"

namespace posetab {

Integer GroupInvariants::order() const {
  Integer n = 1;
  for (const auto& d : torsion) n *= d;
  return n;
}

std::string to_string(const GroupInvariants& inv) {
  if (inv.is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (inv.free_rank > 0) {
    os << "Z";
    if (inv.free_rank > 1) os << '^' << inv.free_rank;
    first = false;
  }
  for (const auto& d : inv.torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

FgAbGroup::FgAbGroup(std::size_t ambient_rank)
    : rank_(ambient_rank), relations_(ambient_rank, 0), cache_(std::make_shared<Cache>()) {}

FgAbGroup::FgAbGroup(std::size_t ambient_rank, Matrix relations)
    : rank_(ambient_rank), relations_(std::move(relations)), cache_(std::make_shared<Cache>()) {
  if (relations_.rows() != rank_)
    throw Error(ErrorKind::Mismatch, "relation matrix has " + std::to_string(relations_.rows()) +
                                         " rows, expected " + std::to_string(rank_));
}

FgAbGroup FgAbGroup::cyclic(const Integer& n) {
  if (n == 0) return free(1);
  return FgAbGroup(1, Matrix::scalar(1, abs(n)));
}

FgAbGroup FgAbGroup::from_invariants(std::size_t free_rank, const std::vector<Integer>& torsion) {
  const std::size_t g = free_rank + torsion.size();
  Matrix rel(g, torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) rel(free_rank + i, i) = torsion[i];
  return FgAbGroup(g, std::move(rel));
}

const Lattice& FgAbGroup::relation_lattice() const {
  std::call_once(cache_->lattice_once, [&] { cache_->lattice = Lattice::from_generators(relations_); });
  return cache_->lattice;
}

const GroupInvariants& FgAbGroup::invariants() const {
  std::call_once(cache_->invariants_once, [&] {
    GroupInvariants inv;
    auto diag = smith_diagonal(relation_lattice().basis());
    inv.free_rank = rank_ - diag.size();
    for (auto& d : diag)
      if (d != 1) inv.torsion.push_back(d);
    cache_->invariants = std::move(inv);
  });
  return cache_->invariants;
}

bool FgAbGroup::is_zero(std::span<const Integer> element) const {
  if (element.size() != rank_) throw Error(ErrorKind::Mismatch, "element has wrong length");
  return relation_lattice().contains(element);
}

bool FgAbGroup::equal(std::span<const Integer> a, std::span<const Integer> b) const {
  Vector diff(a.begin(), a.end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b[i];
  return is_zero(diff);
}

bool isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a.invariants() == b.invariants(); }

GroupClassification classify_group(const FgAbGroup& g) {
  const auto& inv = g.invariants();
  GroupClassification out;
  out.free_rank = inv.free_rank;
  out.invariant_factors = inv.torsion;
  out.is_free = inv.is_free();
  out.is_trivial = inv.is_trivial();
  out.is_injective_in_ab = out.is_trivial;
  return out;
}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ambient_rank() || matrix_.cols() != source_.ambient_rank())
    throw Error(ErrorKind::Mismatch, "hom matrix is " + std::to_string(matrix_.rows()) + "x" +
                                         std::to_string(matrix_.cols()) + ", expected " +
                                         std::to_string(target_.ambient_rank()) + "x" +
                                         std::to_string(source_.ambient_rank()));
  const Matrix moved = matrix_ * source_.relations();
  const Lattice& rel = target_.relation_lattice();
  for (std::size_t c = 0; c < moved.cols(); ++c)
    if (!rel.contains(moved.column(c)))
      throw Error(ErrorKind::NotWellDefined,
                  "matrix " + to_string(matrix_) + " does not respect the source relations");
}

AbHom AbHom::identity(const FgAbGroup& g) { return AbHom(g, g, Matrix::identity(g.ambient_rank())); }

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return AbHom(source, target, Matrix(target.ambient_rank(), source.ambient_rank()));
}

AbHom AbHom::scalar(const FgAbGroup& g, const Integer& n) {
  return AbHom(g, g, Matrix::scalar(g.ambient_rank(), n));
}

bool AbHom::is_zero() const {
  const Lattice& rel = target_.relation_lattice();
  for (std::size_t c = 0; c < matrix_.cols(); ++c)
    if (!rel.contains(matrix_.column(c))) return false;
  return true;
}

bool AbHom::is_injective() const {
  return kernel(*this).group.invariants().is_trivial();
}

bool AbHom::is_surjective() const {
  return contains(image(*this), Subgroup::whole(target_)).contained;
}

bool equal(const AbHom& a, const AbHom& b) {
  if (!a.source().same_presentation(b.source()) || !a.target().same_presentation(b.target()))
    return false;
  const Matrix diff = a.matrix() - b.matrix();
  const Lattice& rel = a.target().relation_lattice();
  for (std::size_t c = 0; c < diff.cols(); ++c)
    if (!rel.contains(diff.column(c))) return false;
  return true;
}

AbHom compose(const AbHom& h2, const AbHom& h1) {
  if (!h1.target().same_presentation(h2.source()))
    throw Error(ErrorKind::Mismatch, "compose: target of the first map is not the source of the second");
  return AbHom(h1.source(), h2.target(), h2.matrix() * h1.matrix());
}

Subgroup::Subgroup(FgAbGroup ambient, Matrix generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  if (generators_.rows() != ambient_.ambient_rank())
    throw Error(ErrorKind::AmbientMismatch, "subgroup generators have the wrong length");
  lattice_ = Lattice::from_generators(generators_) + ambient_.relation_lattice();
}

Subgroup Subgroup::whole(const FgAbGroup& g) { return Subgroup(g, Matrix::identity(g.ambient_rank())); }

Subgroup Subgroup::trivial(const FgAbGroup& g) { return Subgroup(g, Matrix(g.ambient_rank(), 0)); }

FgAbGroup Subgroup::as_group() const {
  return subquotient(lattice_, ambient_.relation_lattice()).group;
}

Subgroup subgroup_from_lattice(const FgAbGroup& ambient, const Lattice& lattice) {
  return Subgroup(ambient, lattice.basis());
}

namespace {

void require_same_ambient(const Subgroup& a, const Subgroup& b) {
  if (!a.ambient().same_presentation(b.ambient()))
    throw Error(ErrorKind::AmbientMismatch, "subgroups live in different ambient groups");
}

}  // namespace

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  return subgroup_from_lattice(a.ambient(), a.lattice().intersect(b.lattice()));
}

Subgroup sum(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  return Subgroup(a.ambient(), hcat(a.generators(), b.generators()));
}

ContainmentResult contains(const Subgroup& outer, const Subgroup& inner) {
  require_same_ambient(outer, inner);
  for (std::size_t c = 0; c < inner.generators().cols(); ++c) {
    if (!outer.contains(inner.generators().column(c)))
      return {false, inner.generators().column_vector(c)};
  }
  return {true, std::nullopt};
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  return a.lattice() == b.lattice();
}

KernelResult kernel(const AbHom& h) {
  const Lattice k = Lattice::preimage(h.matrix(), h.target().relation_lattice());
  Subgroup sub = subgroup_from_lattice(h.source(), k);
  auto sq = subquotient(k, h.source().relation_lattice());
  AbHom embedding(sq.group, h.source(), sq.representatives);
  return {std::move(sub), std::move(sq.group), std::move(embedding)};
}

Subgroup image(const AbHom& h) { return Subgroup(h.target(), h.matrix()); }

QuotientResult quotient(const FgAbGroup& g, const Subgroup& s) {
  if (!s.ambient().same_presentation(g))
    throw Error(ErrorKind::AmbientMismatch, "quotient: subgroup is not inside this group");
  FgAbGroup q(g.ambient_rank(), hcat(g.relations(), s.generators()));
  AbHom proj(g, q, Matrix::identity(g.ambient_rank()));
  return {std::move(q), std::move(proj)};
}

DirectSum direct_sum(const std::vector<FgAbGroup>& groups) {
  DirectSum out;
  std::vector<Matrix> rels;
  std::size_t total = 0;
  for (const auto& g : groups) {
    out.offsets.push_back(total);
    total += g.ambient_rank();
    rels.push_back(g.relations());
  }
  out.group = FgAbGroup(total, block_diagonal(rels));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::size_t r = groups[i].ambient_rank();
    Matrix inc(total, r), proj(r, total);
    for (std::size_t k = 0; k < r; ++k) {
      inc(out.offsets[i] + k, k) = 1;
      proj(k, out.offsets[i] + k) = 1;
    }
    out.inclusions.emplace_back(groups[i], out.group, std::move(inc));
    out.projections.emplace_back(out.group, groups[i], std::move(proj));
  }
  return out;
}

Subquotient subquotient(const Lattice& numerator, const Lattice& denominator) {
  const Matrix& basis = numerator.basis();
  Matrix coords(basis.cols(), denominator.rank());
  for (std::size_t c = 0; c < denominator.rank(); ++c) {
    auto x = numerator.coordinates(denominator.basis().column(c));
    if (!x) throw std::logic_error("subquotient: denominator is not inside the numerator");
    coords.set_column(c, *x);
  }
  return {FgAbGroup(basis.cols(), std::move(coords)), basis};
}

Subquotient homology(const AbHom& in, const AbHom& out) {
  if (!in.target().same_presentation(out.source()))
    throw Error(ErrorKind::Mismatch, "homology: maps are not composable");
  const FgAbGroup& middle = in.target();
  const Lattice cycles = Lattice::preimage(out.matrix(), out.target().relation_lattice());
  const Lattice boundaries = Lattice::from_generators(in.matrix()) + middle.relation_lattice();
  return subquotient(cycles, boundaries);
}

}  // namespace posetab
