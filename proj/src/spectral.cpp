#include "posetab/spectral.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>

#include "posetab/error.hpp"

namespace posetab {

std::string to_string(SSType t) { return t == SSType::Homological ? "homological" : "cohomological"; }

SSType type_of(Comparison c) { return c == Comparison::AtLeast ? SSType::Cohomological : SSType::Homological; }

namespace {

using enum FilterVertex;
using enum Comparison;

const std::array<Variant, 8> kVariants = {{
    {1, ComplexKind::Chain, Direction::Decreasing, {Last, AtLeast}, {First, AtMost}},
    {2, ComplexKind::Chain, Direction::Decreasing, {First, AtMost}, {Last, AtLeast}},
    {3, ComplexKind::Chain, Direction::Increasing, {Last, AtMost}, {First, AtLeast}},
    {4, ComplexKind::Chain, Direction::Increasing, {First, AtLeast}, {Last, AtMost}},
    {5, ComplexKind::Cochain, Direction::Decreasing, {Last, AtMost}, {First, AtLeast}},
    {6, ComplexKind::Cochain, Direction::Decreasing, {First, AtLeast}, {Last, AtMost}},
    {7, ComplexKind::Cochain, Direction::Increasing, {Last, AtLeast}, {First, AtMost}},
    {8, ComplexKind::Cochain, Direction::Increasing, {First, AtMost}, {Last, AtLeast}},
}};

std::string describe(const Filtration& f) {
  return std::string(f.vertex == First ? "deg(s0)" : "deg(sn)") + (f.comparison == AtLeast ? " >= p" : " <= p");
}

std::vector<std::size_t> block_axes(const Block& b) {
  std::vector<std::size_t> axes;
  for (std::size_t k = 0; k < b.rank; ++k) axes.push_back(b.offset + k);
  return axes;
}

bool same_sizes(const GroupInvariants& a, const GroupInvariants& b) { return a == b; }

}  // namespace

const Variant& table_variant(int number) {
  if (number < 1 || number > 8)
    throw Error(ErrorKind::Validation, "variant must be between 1 and 8, got " + std::to_string(number));
  return kVariants[number - 1];
}

std::string describe(const Variant& v) {
  return "variant " + std::to_string(v.number) + ": " + (v.complex == ComplexKind::Chain ? "chain" : "cochain") +
         " complex, " + to_string(v.direction) + " degrees, first " + describe(v.first) + " (" +
         to_string(type_of(v.first.comparison)) + "), second " + describe(v.second) + " (" +
         to_string(type_of(v.second.comparison)) + ")";
}

std::pair<int, int> bidegree(SSType type, int r) {
  return type == SSType::Homological ? std::pair{-r, r - 1} : std::pair{r, 1 - r};
}

FilteredComplex::FilteredComplex(ChainComplex base, std::vector<std::vector<int>> levels, Comparison comparison)
    : base_(std::move(base)), levels_(std::move(levels)), comparison_(comparison) {
  if (levels_.size() != base_.length()) throw std::logic_error("one level list per degree expected");
  bool any = false;
  for (long n = 0; n < static_cast<long>(base_.length()); ++n) {
    if (levels_[n].size() != base_.term(n).blocks.size()) throw std::logic_error("one level per block expected");
    for (int p : levels_[n]) {
      const int t = internal(p);
      t_min_ = any ? std::min(t_min_, t) : t;
      t_max_ = any ? std::max(t_max_, t) : t;
      any = true;
    }
  }
  // d must not lower the internal level of any component.
  for (long n = 0; n < static_cast<long>(base_.length()); ++n) {
    const long m = n + base_.step();
    if (!base_.in_range(m)) continue;
    const Matrix d = base_.differential(n);
    const auto& src = base_.term(n).blocks;
    const auto& dst = base_.term(m).blocks;
    for (std::size_t b = 0; b < src.size(); ++b)
      for (std::size_t c = 0; c < dst.size(); ++c) {
        if (internal(levels_[m][c]) >= internal(levels_[n][b])) continue;
        for (std::size_t j = 0; j < src[b].rank; ++j)
          for (std::size_t i = 0; i < dst[c].rank; ++i)
            if (d(dst[c].offset + i, src[b].offset + j) != 0)
              throw std::logic_error("differential leaves the filtration at degree " + std::to_string(n));
      }
  }
}

int FilteredComplex::q_of(long n, int p) const {
  const int s = (base_.kind() == ComplexKind::Chain) == (type() == SSType::Homological) ? 1 : -1;
  return s * static_cast<int>(n) - p;
}

long FilteredComplex::n_of(int p, int q) const {
  const int s = (base_.kind() == ComplexKind::Chain) == (type() == SSType::Homological) ? 1 : -1;
  return s * (p + q);
}

ChainComplex FilteredComplex::graded_piece(int p) const {
  const long len = static_cast<long>(base_.length());
  std::vector<std::vector<std::size_t>> axes(len);
  std::vector<ComplexTerm> terms(len);
  for (long n = 0; n < len; ++n) {
    const auto& blocks = base_.term(n).blocks;
    std::size_t offset = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (levels_[n][b] != p) continue;
      Block nb = blocks[b];
      nb.offset = offset;
      offset += nb.rank;
      terms[n].blocks.push_back(nb);
      for (std::size_t a : block_axes(blocks[b])) axes[n].push_back(a);
    }
    // Relations are block diagonal, so restricting rows and dropping the
    // columns that vanish there gives the relations of the selected blocks.
    const Matrix rows = base_.group(n).relations().select_rows(axes[n]);
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < rows.cols(); ++c)
      if (!is_zero(rows.column(c))) keep.push_back(c);
    terms[n].group = FgAbGroup(offset, rows.select_columns(keep));
  }
  std::vector<Matrix> d(len);
  for (long n = 0; n < len; ++n) {
    const long m = n + base_.step();
    if (!base_.in_range(m)) {
      d[n] = Matrix(0, terms[n].group.ambient_rank());
      continue;
    }
    d[n] = base_.differential(n).select_rows(axes[m]).select_columns(axes[n]);
  }
  return ChainComplex(base_.kind(), std::move(terms), std::move(d));
}

FilteredComplex build_filtered(const Diagram& f, ComplexKind complex, Filtration filtration) {
  ChainComplex base = nerve_complex(f, complex);
  std::vector<std::vector<int>> levels(base.length());
  for (long n = 0; n < static_cast<long>(base.length()); ++n)
    for (const Block& b : base.term(n).blocks) {
      const std::size_t v = filtration.vertex == First ? b.chain.first() : b.chain.last();
      levels[n].push_back(f.poset().declared_degree(v));
    }
  return FilteredComplex(std::move(base), std::move(levels), filtration.comparison);
}

FilteredComplex build_filtered(const Diagram& f, int variant) {
  const Variant& v = table_variant(variant);
  if (v.direction != f.poset().direction())
    throw Error(ErrorKind::VariantMismatch, "variant " + std::to_string(variant) + " needs " +
                                                to_string(v.direction) + " degrees but the poset is declared " +
                                                to_string(f.poset().direction()));
  return build_filtered(f, v.complex, v.first);
}

const SSEntry* SSPage::find(int p, int q) const {
  for (const auto& e : entries)
    if (e.p == p && e.q == q) return &e;
  return nullptr;
}

GroupInvariants SSPage::invariants(int p, int q) const {
  const SSEntry* e = find(p, q);
  return e ? e->group.invariants() : GroupInvariants{};
}

std::vector<std::pair<int, int>> SSPage::support() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : entries)
    if (!e.group.invariants().is_trivial()) out.emplace_back(e.p, e.q);
  return out;
}

struct SpectralSequence::Impl {
  FilteredComplex x;
  std::map<std::pair<int, long>, Lattice> fil_cache;
  std::map<std::tuple<int, int, long>, Lattice> z_cache;
  std::map<int, SSPage> pages;

  int clamp(int t) const { return std::clamp(t, x.min_internal(), x.max_internal() + 1); }

  // Preimage in Z^{g_n} of the t-th filtration piece of C_n.
  const Lattice& fil(int t, long n) {
    t = clamp(t);
    auto key = std::pair{t, n};
    auto it = fil_cache.find(key);
    if (it != fil_cache.end()) return it->second;
    const ChainComplex& c = x.base();
    Lattice l(c.group(n).ambient_rank());
    if (c.in_range(n)) {
      std::vector<std::size_t> axes;
      const auto& blocks = c.term(n).blocks;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (x.internal(x.level(n, b)) >= t)
          for (std::size_t a : block_axes(blocks[b])) axes.push_back(a);
      l = Lattice::coordinate(c.group(n).ambient_rank(), axes) + c.group(n).relation_lattice();
    }
    return fil_cache.emplace(key, std::move(l)).first->second;
  }

  // Elements of level t whose differential lies r levels deeper.
  const Lattice& z(int r, int t, long n) {
    if (r <= 0) return fil(t, n);
    t = clamp(t);
    r = std::min(r, x.span() + 2);
    auto key = std::tuple{r, t, n};
    auto it = z_cache.find(key);
    if (it != z_cache.end()) return it->second;
    const ChainComplex& c = x.base();
    Lattice l = fil(t, n).intersect(Lattice::preimage(c.differential(n), fil(t + r, n + c.step())));
    return z_cache.emplace(key, std::move(l)).first->second;
  }

  Lattice boundaries(int r, int t, long n) {
    const ChainComplex& c = x.base();
    const long m = n - c.step();
    const Matrix d = c.differential(m);
    const Lattice& from = fil(t - r + 1, m);
    const Lattice image = Lattice::from_generators(d * from.basis()) + c.group(n).relation_lattice();
    return fil(t, n).intersect(image);
  }

  Subquotient entry(int r, int t, long n) {
    const Lattice& num = z(r, t, n);
    const Lattice den = z(r - 1, t + 1, n) + boundaries(r, t, n);
    return subquotient(num, den);
  }

  const SSPage& page(int r) {
    auto it = pages.find(r);
    if (it != pages.end()) return it->second;
    const ChainComplex& c = x.base();
    SSPage pg;
    pg.r = r;
    pg.type = x.type();
    std::map<std::pair<int, long>, std::size_t> where;
    for (long n = 0; n < static_cast<long>(c.length()); ++n)
      for (int t = x.min_internal(); t <= x.max_internal(); ++t) {
        Subquotient sq = entry(r, t, n);
        const int p = x.declared(t);
        where[{t, n}] = pg.entries.size();
        pg.entries.push_back({p, x.q_of(n, p), n, std::move(sq.group), std::move(sq.representatives)});
      }
    for (long n = 0; n < static_cast<long>(c.length()); ++n)
      for (int t = x.min_internal(); t <= x.max_internal(); ++t) {
        const SSEntry& src = pg.entries[where.at({t, n})];
        const int tt = t + r;
        const long nn = n + c.step();
        const int pp = x.declared(tt);
        SSDifferential diff;
        diff.from = {src.p, src.q};
        diff.to = {pp, x.q_of(nn, pp)};
        auto target = where.find({tt, nn});
        if (target == where.end()) {
          diff.map = AbHom::zero(src.group, FgAbGroup::trivial());
        } else {
          const SSEntry& dst = pg.entries[target->second];
          const Lattice& dst_num = z(r, tt, nn);
          const Matrix moved = c.differential(n) * src.representatives;
          Matrix m(dst.group.ambient_rank(), src.group.ambient_rank());
          for (std::size_t k = 0; k < moved.cols(); ++k) {
            auto coords = dst_num.coordinates(moved.column(k));
            if (!coords) throw std::logic_error("d_r leaves the target numerator");
            m.set_column(k, *coords);
          }
          diff.map = AbHom(src.group, dst.group, std::move(m));
        }
        pg.differentials.push_back(std::move(diff));
      }
    std::vector<std::size_t> order(pg.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair{pg.entries[a].p, pg.entries[a].q} < std::pair{pg.entries[b].p, pg.entries[b].q};
    });
    SSPage sorted;
    sorted.r = pg.r;
    sorted.type = pg.type;
    for (std::size_t i : order) {
      sorted.entries.push_back(std::move(pg.entries[i]));
      sorted.differentials.push_back(std::move(pg.differentials[i]));
    }
    return pages.emplace(r, std::move(sorted)).first->second;
  }
};

SpectralSequence::SpectralSequence(FilteredComplex x) : impl_(std::make_unique<Impl>()) { impl_->x = std::move(x); }
SpectralSequence::~SpectralSequence() = default;
SpectralSequence::SpectralSequence(SpectralSequence&&) noexcept = default;
SpectralSequence& SpectralSequence::operator=(SpectralSequence&&) noexcept = default;

const FilteredComplex& SpectralSequence::complex() const { return impl_->x; }

const SSPage& SpectralSequence::page(int r) {
  if (r < 0) throw Error(ErrorKind::Validation, "page index must be nonnegative");
  return impl_->page(r);
}

int SpectralSequence::stable_page() const { return impl_->x.span() + 2; }

const SSPage& SpectralSequence::e_infinity() {
  const int r = stable_page();
  const SSPage& a = page(r);
  const SSPage& b = page(r + 1);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& e = a.entries[i];
    if (!same_sizes(e.group.invariants(), b.entries[i].group.invariants()))
      throw Error(ErrorKind::ConvergenceViolation, "page " + std::to_string(r) + " differs from page " +
                                                       std::to_string(r + 1) + " at (" + std::to_string(e.p) +
                                                       ", " + std::to_string(e.q) + ")");
  }
  return a;
}

bool SpectralSequence::recurrence_holds(int r, std::string* detail) {
  const SSPage& cur = page(r);
  const SSPage& next = page(r + 1);
  auto fail = [&](const std::string& msg) {
    if (detail) *detail = "page " + std::to_string(r) + ": " + msg;
    return false;
  };
  for (std::size_t i = 0; i < cur.entries.size(); ++i) {
    const SSEntry& e = cur.entries[i];
    const AbHom& out = cur.differentials[i].map;
    // The differential landing here starts at (p, q) minus the bidegree.
    const auto [dp, dq] = bidegree(cur.type, r);
    const SSEntry* src = cur.find(e.p - dp, e.q - dq);
    AbHom in = AbHom::zero(FgAbGroup::trivial(), e.group);
    if (src) {
      const std::size_t k = static_cast<std::size_t>(src - cur.entries.data());
      in = cur.differentials[k].map;
      if (!compose(out, in).is_zero())
        return fail("d_r∘d_r != 0 at (" + std::to_string(e.p) + ", " + std::to_string(e.q) + ")");
    }
    const GroupInvariants h = homology(in, out).group.invariants();
    const GroupInvariants expected = next.entries[i].group.invariants();
    if (!(h == expected))
      return fail("homology at (" + std::to_string(e.p) + ", " + std::to_string(e.q) + ") is " + to_string(h) +
                  " but the next page has " + to_string(expected));
  }
  return true;
}

SSPage page(const FilteredComplex& x, int r) {
  SpectralSequence ss(x);
  return ss.page(r);
}

SSPage e_infinity(const FilteredComplex& x) {
  SpectralSequence ss(x);
  return ss.e_infinity();
}

InnerSpectralSequence inner_column_ss(const Diagram& f, int p, int variant) {
  const Variant& v = table_variant(variant);
  const FilteredComplex outer = build_filtered(f, variant);
  ChainComplex piece = outer.graded_piece(p);
  std::vector<std::vector<int>> levels(piece.length());
  for (long n = 0; n < static_cast<long>(piece.length()); ++n)
    for (const Block& b : piece.term(n).blocks) {
      const std::size_t vtx = v.second.vertex == First ? b.chain.first() : b.chain.last();
      levels[n].push_back(f.poset().declared_degree(vtx));
    }
  InnerSpectralSequence out;
  out.p = p;
  out.complex = FilteredComplex(std::move(piece), std::move(levels), v.second.comparison);
  SpectralSequence ss(out.complex);
  for (int r = 0; r <= ss.stable_page(); ++r) out.pages.push_back(ss.page(r));
  ss.e_infinity();
  return out;
}

namespace {

void check_degree(long n, std::size_t rank_sum, bool all_finite, const Integer& order, const GroupInvariants& target,
                  const std::string& what) {
  if (rank_sum != target.free_rank)
    throw Error(ErrorKind::ConvergenceViolation, what + ": E_inf ranks in total degree " + std::to_string(n) +
                                                     " add up to " + std::to_string(rank_sum) + ", target is " +
                                                     to_string(target));
  if (all_finite && target.is_finite() && order != target.order())
    throw Error(ErrorKind::ConvergenceViolation, what + ": E_inf orders in total degree " + std::to_string(n) +
                                                     " multiply to " + order.get_str() + ", target is " +
                                                     to_string(target));
}

}  // namespace

ConvergenceReport convergence_check(SpectralSequence& ss) {
  const FilteredComplex& x = ss.complex();
  const SSPage& inf = ss.e_infinity();
  ConvergenceReport rep;
  rep.stable_page = ss.stable_page();
  for (long n = 0; n < static_cast<long>(x.base().length()) + 1; ++n) {
    DegreeConvergence dc;
    dc.n = n;
    dc.target = homology_at(x.base(), n).group.invariants();
    bool finite = true;
    Integer order = 1;
    for (const auto& e : inf.entries) {
      if (e.n != n) continue;
      const auto& inv = e.group.invariants();
      dc.e_infinity_rank += inv.free_rank;
      finite = finite && inv.is_finite();
      if (inv.is_finite()) order *= inv.order();
    }
    dc.orders_checked = finite && dc.target.is_finite();
    check_degree(n, dc.e_infinity_rank, finite, order, dc.target, "convergence");
    rep.degrees.push_back(std::move(dc));
  }
  return rep;
}

ConvergenceReport convergence_check(const Diagram& f, int variant) {
  const Variant& v = table_variant(variant);
  SpectralSequence ss(build_filtered(f, variant));
  ConvergenceReport rep = convergence_check(ss);
  rep.variant = variant;
  // The homology of the base complex is the derived functor itself; check
  // that link too so the comparison is against the real target.
  for (auto& dc : rep.degrees) {
    const GroupInvariants direct = derived_functor(f, limit_kind_of(v.complex), dc.n).invariants();
    if (!(direct == dc.target))
      throw Error(ErrorKind::ConvergenceViolation, "filtered base complex disagrees with the derived functor");
  }
  return rep;
}

void check_inner_against_outer(const Diagram& f, int p, int variant) {
  InnerSpectralSequence inner = inner_column_ss(f, p, variant);
  SpectralSequence outer(build_filtered(f, variant));
  const SSPage& e1 = outer.page(1);
  const SSPage& inf = inner.pages.back();
  for (long n = 0; n < static_cast<long>(inner.complex.base().length()); ++n) {
    const SSEntry* col = e1.find(p, outer.complex().q_of(n, p));
    const GroupInvariants target = col ? col->group.invariants() : GroupInvariants{};
    std::size_t ranks = 0;
    bool finite = true;
    Integer order = 1;
    for (const auto& e : inf.entries) {
      if (e.n != n) continue;
      const auto& inv = e.group.invariants();
      ranks += inv.free_rank;
      finite = finite && inv.is_finite();
      if (inv.is_finite()) order *= inv.order();
    }
    check_degree(n, ranks, finite, order, target, "inner sequence at p = " + std::to_string(p));
  }
}

}  // namespace posetab
