#include "posetab/derived.hpp"

#include <map>
#include <stdexcept>

namespace posetab {

LimitKind limit_kind_of(ComplexKind k) { return k == ComplexKind::Chain ? LimitKind::Colim : LimitKind::Lim; }
ComplexKind complex_kind_of(LimitKind k) { return k == LimitKind::Colim ? ComplexKind::Chain : ComplexKind::Cochain; }
std::string to_string(LimitKind k) { return k == LimitKind::Colim ? "colim" : "lim"; }

ChainComplex::ChainComplex(ComplexKind kind, std::vector<ComplexTerm> terms, std::vector<Matrix> differentials)
    : kind_(kind), terms_(std::move(terms)), d_(std::move(differentials)) {
  if (d_.size() != terms_.size()) throw std::logic_error("one differential per term expected");
  for (long n = 0; n < static_cast<long>(terms_.size()); ++n) {
    const Matrix& d = d_[n];
    const FgAbGroup& target = group(n + step());
    if (d.rows() != target.ambient_rank() || d.cols() != group(n).ambient_rank())
      throw std::logic_error("differential at degree " + std::to_string(n) + " has the wrong shape");
    const Matrix moved = d * group(n).relations();
    for (std::size_t c = 0; c < moved.cols(); ++c)
      if (!target.relation_lattice().contains(moved.column(c)))
        throw std::logic_error("differential at degree " + std::to_string(n) + " is not well defined");
    if (!in_range(n + step())) continue;
    const Matrix dd = d_[n + step()] * d;
    if (dd.is_zero()) continue;
    const FgAbGroup& far = group(n + 2 * step());
    for (std::size_t c = 0; c < dd.cols(); ++c)
      if (!far.relation_lattice().contains(dd.column(c)))
        throw std::logic_error("d∘d != 0 at degree " + std::to_string(n));
  }
}

const ComplexTerm& ChainComplex::term(long n) const { return in_range(n) ? terms_[n] : zero_; }

Matrix ChainComplex::differential(long n) const {
  if (in_range(n)) return d_[n];
  return Matrix(group(n + step()).ambient_rank(), group(n).ambient_rank());
}

namespace {

void add_block(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& block, int sign) {
  for (std::size_t c = 0; c < block.cols(); ++c)
    for (std::size_t r = 0; r < block.rows(); ++r) {
      if (sign > 0)
        m(r0 + r, c0 + c) += block(r, c);
      else
        m(r0 + r, c0 + c) -= block(r, c);
    }
}

std::vector<std::size_t> face(const Chain& s, std::size_t i) {
  std::vector<std::size_t> v = s.vertices;
  v.erase(v.begin() + static_cast<long>(i));
  return v;
}

ChainComplex build(const Diagram& f, ComplexKind kind, const std::vector<std::vector<Chain>>& simplices) {
  const std::size_t len = simplices.size();
  std::vector<ComplexTerm> terms(len);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> lookup(len);
  for (std::size_t n = 0; n < len; ++n) {
    std::vector<Matrix> rels;
    std::size_t offset = 0;
    for (const Chain& s : simplices[n]) {
      const std::size_t obj = kind == ComplexKind::Chain ? s.first() : s.last();
      const std::size_t rank = f.group(obj).ambient_rank();
      lookup[n].emplace(s.vertices, terms[n].blocks.size());
      terms[n].blocks.push_back({s, obj, offset, rank});
      rels.push_back(f.group(obj).relations());
      offset += rank;
    }
    terms[n].group = FgAbGroup(offset, block_diagonal(rels));
  }

  auto rank_of = [&](long n) -> std::size_t {
    return n >= 0 && n < static_cast<long>(len) ? terms[n].group.ambient_rank() : 0;
  };
  std::vector<Matrix> d(len);
  for (std::size_t n = 0; n < len; ++n) {
    if (kind == ComplexKind::Chain) {
      d[n] = Matrix(rank_of(static_cast<long>(n) - 1), rank_of(static_cast<long>(n)));
      if (n == 0) continue;
      for (const Block& b : terms[n].blocks) {
        const auto& v = b.chain.vertices;
        for (std::size_t i = 0; i <= n; ++i) {
          const Block& t = terms[n - 1].blocks[lookup[n - 1].at(face(b.chain, i))];
          const Matrix m = i == 0 ? f.eval(v[0], v[1]).matrix() : Matrix::identity(b.rank);
          add_block(d[n], t.offset, b.offset, m, i % 2 == 0 ? 1 : -1);
        }
      }
    } else {
      d[n] = Matrix(rank_of(static_cast<long>(n) + 1), rank_of(static_cast<long>(n)));
      if (n + 1 >= len) continue;
      for (const Block& b : terms[n + 1].blocks) {
        const auto& v = b.chain.vertices;
        for (std::size_t i = 0; i <= n + 1; ++i) {
          const Block& t = terms[n].blocks[lookup[n].at(face(b.chain, i))];
          const Matrix m = i == n + 1 ? f.eval(v[n], v[n + 1]).matrix() : Matrix::identity(b.rank);
          add_block(d[n], b.offset, t.offset, m, i % 2 == 0 ? 1 : -1);
        }
      }
    }
  }
  return ChainComplex(kind, std::move(terms), std::move(d));
}

}  // namespace

ChainComplex nerve_complex(const Diagram& f, ComplexKind kind) {
  std::vector<std::vector<Chain>> simplices;
  if (!f.poset().empty())
    for (std::size_t n = 0; n <= f.poset().longest_chain(); ++n) simplices.push_back(enumerate_chains(f.poset(), n));
  return build(f, kind, simplices);
}

ChainComplex chain_complex(const Diagram& f) { return nerve_complex(f, ComplexKind::Chain); }
ChainComplex cochain_complex(const Diagram& f) { return nerve_complex(f, ComplexKind::Cochain); }

ChainComplex unnormalized_complex(const Diagram& f, ComplexKind kind, std::size_t top) {
  std::vector<std::vector<Chain>> simplices;
  if (!f.poset().empty())
    for (std::size_t n = 0; n <= top; ++n) simplices.push_back(enumerate_all_simplices(f.poset(), n));
  return build(f, kind, simplices);
}

Subquotient homology_at(const ChainComplex& x, long n) {
  if (!x.in_range(n)) return {FgAbGroup::trivial(), Matrix(0, 0)};
  const Lattice cycles = Lattice::preimage(x.differential(n), x.group(n + x.step()).relation_lattice());
  const Lattice boundaries = Lattice::from_generators(x.differential(n - x.step())) + x.group(n).relation_lattice();
  return subquotient(cycles, boundaries);
}

FgAbGroup derived_functor(const Diagram& f, LimitKind kind, long i) {
  if (i < 0) return FgAbGroup::trivial();
  return homology_at(nerve_complex(f, complex_kind_of(kind)), i).group;
}

std::vector<GroupInvariants> derived_table(const Diagram& f, LimitKind kind, long max_degree) {
  const ChainComplex x = nerve_complex(f, complex_kind_of(kind));
  std::vector<GroupInvariants> out;
  for (long i = 0; i <= max_degree; ++i) out.push_back(homology_at(x, i).group.invariants());
  return out;
}

AcyclicityResult is_acyclic(const Diagram& f, LimitKind kind) {
  const ChainComplex x = nerve_complex(f, complex_kind_of(kind));
  for (long i = 1; i < static_cast<long>(x.length()); ++i) {
    const GroupInvariants inv = homology_at(x, i).group.invariants();
    if (!inv.is_trivial()) return {false, i, inv};
  }
  return {};
}

FgAbGroup colimit_direct(const Diagram& f) {
  std::vector<FgAbGroup> groups(f.groups());
  const DirectSum sum = direct_sum(groups);
  Matrix rel = sum.group.relations();
  const std::size_t total = sum.group.ambient_rank();
  for (std::size_t p = 0; p < f.size(); ++p)
    for (std::size_t q = 0; q < f.size(); ++q) {
      if (!f.poset().less(p, q)) continue;
      const Matrix& m = f.eval(p, q).matrix();
      for (std::size_t k = 0; k < m.cols(); ++k) {
        Vector col(total);
        col[sum.offsets[p] + k] = 1;
        for (std::size_t r = 0; r < m.rows(); ++r) col[sum.offsets[q] + r] -= m(r, k);
        rel.append_column(col);
      }
    }
  return FgAbGroup(total, std::move(rel));
}

FgAbGroup limit_direct(const Diagram& f) {
  const DirectSum source = direct_sum(f.groups());
  std::vector<FgAbGroup> targets;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (std::size_t p = 0; p < f.size(); ++p)
    for (std::size_t q = 0; q < f.size(); ++q)
      if (f.poset().less(p, q)) {
        arrows.emplace_back(p, q);
        targets.push_back(f.group(q));
      }
  const DirectSum target = direct_sum(targets);
  Matrix m(target.group.ambient_rank(), source.group.ambient_rank());
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto [p, q] = arrows[a];
    const Matrix& fa = f.eval(p, q).matrix();
    m.set_block(target.offsets[a], source.offsets[p], fa);
    for (std::size_t r = 0; r < f.group(q).ambient_rank(); ++r) m(target.offsets[a] + r, source.offsets[q] + r) -= 1;
  }
  return kernel(AbHom(source.group, target.group, std::move(m))).group;
}

}  // namespace posetab
