#include <gtest/gtest.h>

#include "posetab/error.hpp"
#include "posetab/gallery.hpp"
#include "posetab/oracle.hpp"
#include "posetab/spectral.hpp"
#include "support.hpp"

using namespace posetab;
using posetab::testing::inv;

namespace {

std::vector<int> levels_of(const FilteredComplex& x, long n) { return x.levels()[static_cast<std::size_t>(n)]; }

bool same_page(const SSPage& a, const SSPage& b) {
  for (const auto& e : a.entries)
    if (e.group.invariants() != b.invariants(e.p, e.q)) return false;
  for (const auto& e : b.entries)
    if (e.group.invariants() != a.invariants(e.p, e.q)) return false;
  return true;
}

std::vector<int> increasing_variants() { return {3, 4, 7, 8}; }

}  // namespace

TEST(Filtered, IntroPushoutLevels) {
  const Diagram f = intro_pushout();
  const FilteredComplex last = build_filtered(f, 3);
  EXPECT_EQ(levels_of(last, 0), (std::vector{0, 1, 1}));
  EXPECT_EQ(levels_of(last, 1), (std::vector{1, 1}));
  const FilteredComplex first = build_filtered(f, 4);
  EXPECT_EQ(levels_of(first, 0), (std::vector{0, 1, 1}));
  EXPECT_EQ(levels_of(first, 1), (std::vector{0, 0}));
}

TEST(Filtered, SingleObject) {
  const Diagram f = constant(GradedPoset::validate({{"x", 4}}, {}), FgAbGroup::free(1));
  const FilteredComplex x = build_filtered(f, 3);
  EXPECT_EQ(levels_of(x, 0), std::vector{4});
  EXPECT_EQ(x.span(), 0);
  SpectralSequence ss(x);
  EXPECT_TRUE(same_page(ss.page(1), ss.page(2)));
  EXPECT_EQ(ss.page(1).invariants(4, x.q_of(0, 4)), inv(1, {}));
}

TEST(Filtered, VariantMismatch) {
  for (int v : {1, 2, 5, 6}) {
    try {
      build_filtered(intro_pushout(), v);
      FAIL() << v;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::VariantMismatch);
    }
  }
  EXPECT_NO_THROW(build_filtered(with_direction(intro_pushout(), Direction::Decreasing), 1));
  EXPECT_THROW(table_variant(9), Error);
}

TEST(Bidegree, Types) {
  EXPECT_EQ(bidegree(SSType::Homological, 2), (std::pair{-2, 1}));
  EXPECT_EQ(bidegree(SSType::Cohomological, 1), (std::pair{1, 0}));
  EXPECT_EQ(bidegree(SSType::Cohomological, 3), (std::pair{3, -2}));
}

TEST(Bidegree, DifferentialsMatchDeclaredType) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const Diagram base = random_instance(small_config(s));
    for (int v = 1; v <= 8; ++v) {
      const Diagram f = with_direction(base, table_variant(v).direction);
      SpectralSequence ss(build_filtered(f, v));
      for (int r = 0; r <= ss.stable_page(); ++r) {
        const SSPage& pg = ss.page(r);
        const auto [dp, dq] = bidegree(pg.type, r);
        for (const auto& d : pg.differentials) {
          EXPECT_EQ(d.to.first - d.from.first, dp) << "variant " << v;
          EXPECT_EQ(d.to.second - d.from.second, dq) << "variant " << v;
        }
      }
    }
  }
}

TEST(Pages, IntroPushoutFirstPage) {
  const FilteredComplex x = build_filtered(intro_pushout(), 3);
  SpectralSequence ss(x);
  EXPECT_EQ(ss.page(1).invariants(0, x.q_of(0, 0)), inv(1, {}));
  // Column 1 is (a,b), (a,c) -> (b), (c) by diag(2, 2).
  EXPECT_EQ(ss.page(1).invariants(1, x.q_of(0, 1)), inv(0, {2, 2}));
  EXPECT_EQ(ss.page(1).invariants(1, x.q_of(1, 1)), inv(0, {}));
  EXPECT_LE(ss.stable_page(), 3);
  EXPECT_TRUE(same_page(ss.page(3), ss.e_infinity()));
}

TEST(Pages, PageZeroIsAssociatedGraded) {
  for (std::uint64_t s = 1; s <= 15; ++s) {
    const Diagram f = random_instance(small_config(s));
    for (int v : increasing_variants()) {
      const FilteredComplex x = build_filtered(with_direction(f, Direction::Increasing), v);
      const SSPage p0 = page(x, 0);
      for (int p = x.declared(x.min_internal()); ; p += (x.comparison() == Comparison::AtLeast ? 1 : -1)) {
        const ChainComplex g = x.graded_piece(p);
        for (long n = 0; n < static_cast<long>(g.length()); ++n)
          EXPECT_EQ(p0.invariants(p, x.q_of(n, p)), g.group(n).invariants()) << s << " v" << v;
        if (p == x.declared(x.max_internal())) break;
      }
    }
  }
}

TEST(Pages, FirstPageIsHomologyOfGradedPieces) {
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const Diagram f = random_instance(small_config(s));
    for (int v = 1; v <= 8; ++v) {
      const FilteredComplex x = build_filtered(with_direction(f, table_variant(v).direction), v);
      const SSPage p1 = page(x, 1);
      for (int t = x.min_internal(); t <= x.max_internal(); ++t) {
        const int p = x.declared(t);
        const ChainComplex g = x.graded_piece(p);
        for (long n = 0; n < static_cast<long>(g.length()); ++n)
          EXPECT_EQ(p1.invariants(p, x.q_of(n, p)), homology_at(g, n).group.invariants()) << s << " v" << v;
      }
    }
  }
}

TEST(Pages, CollapseAfterSpan) {
  const Diagram chain = constant(chain_poset(2), FgAbGroup::from_invariants(1, {Integer(2)}));
  for (int v : increasing_variants()) {
    const FilteredComplex x = build_filtered(chain, v);
    EXPECT_EQ(x.span(), 2);
    EXPECT_TRUE(same_page(page(x, 4), page(x, 5))) << v;
    EXPECT_TRUE(same_page(page(x, 4), e_infinity(x))) << v;
  }
}

TEST(Pages, RecurrenceOnRandomInstances) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Diagram base = random_instance(small_config(s));
    for (int v = 1; v <= 8; ++v) {
      SpectralSequence ss(build_filtered(with_direction(base, table_variant(v).direction), v));
      for (int r = 0; r <= ss.stable_page(); ++r) {
        std::string detail;
        EXPECT_TRUE(ss.recurrence_holds(r, &detail)) << "seed " << s << " v" << v << " r" << r << ": " << detail;
      }
    }
  }
}

TEST(Convergence, IntroPushout) {
  const ConvergenceReport r = convergence_check(intro_pushout(), 3);
  ASSERT_FALSE(r.degrees.empty());
  EXPECT_EQ(r.degrees[0].n, 0);
  EXPECT_EQ(r.degrees[0].e_infinity_rank, 1u);
  EXPECT_EQ(r.degrees[0].target, inv(1, {2}));
  for (const auto& d : r.degrees)
    if (d.n >= 1) {
      EXPECT_EQ(d.e_infinity_rank, 0u);
    }
}

TEST(Convergence, ConstantTorsionOnChainLimOrders) {
  for (long p : {2, 3, 5}) {
    const Diagram f = constant_on_chain(p, 2);
    for (int v : {7, 8}) {
      const ConvergenceReport r = convergence_check(f, v);
      ASSERT_FALSE(r.degrees.empty());
      EXPECT_EQ(r.degrees[0].target, inv(0, {p}));
      EXPECT_TRUE(r.degrees[0].orders_checked);
    }
  }
}

TEST(Convergence, AllVariantsOnRandomInstances) {
  for (std::uint64_t s = 1; s <= 30; ++s) EXPECT_NO_THROW(check_spectral(random_instance(small_config(s)))) << s;
}

TEST(Inner, IntroColumnOne) {
  const Diagram f = intro_pushout();
  const InnerSpectralSequence in = inner_column_ss(f, 1, 3);
  EXPECT_EQ(in.p, 1);
  EXPECT_FALSE(in.pages.empty());
  // Blocks ending at degree 1 split by starting degree: edges start at 0, vertices at 1.
  const FilteredComplex& x = in.complex;
  EXPECT_EQ(levels_of(x, 1), (std::vector{0, 0}));
  EXPECT_NO_THROW(check_inner_against_outer(f, 1, 3));
}

TEST(Inner, MinimumDegreeIsOneColumn) {
  const InnerSpectralSequence in = inner_column_ss(intro_pushout(), 0, 3);
  for (const auto& pg : in.pages)
    for (const auto& pq : pg.support()) EXPECT_EQ(pq.first, 0);
}

// Only when the outer filtration reads the vertex that carries the group.
TEST(Inner, SkyscraperOnlyAtItsDegree) {
  const Diagram f = skyscraper(chain_poset(2), 1, FgAbGroup::free(1));
  for (int v : {4, 7})
    for (int p = 0; p <= 2; ++p) {
      const InnerSpectralSequence in = inner_column_ss(f, p, v);
      bool nonzero = false;
      for (const auto& pg : in.pages) nonzero = nonzero || !pg.support().empty();
      EXPECT_EQ(nonzero, p == 1) << "v" << v << " p" << p;
    }
  // Chains carry F(first vertex), so (a1, a2) shows up in column 2 of variant 3.
  bool column_two = false;
  for (const auto& pg : inner_column_ss(f, 2, 3).pages) column_two = column_two || !pg.support().empty();
  EXPECT_TRUE(column_two);
}

TEST(Inner, AgreesWithOuterOnRandomInstances) {
  for (std::uint64_t s = 1; s <= 15; ++s) {
    const Diagram f = with_direction(random_instance(small_config(s)), Direction::Increasing);
    for (int v : increasing_variants()) {
      const FilteredComplex x = build_filtered(f, v);
      for (int t = x.min_internal(); t <= x.max_internal(); ++t)
        EXPECT_NO_THROW(check_inner_against_outer(f, x.declared(t), v)) << s << " v" << v;
    }
  }
}
