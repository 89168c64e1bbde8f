#include <gtest/gtest.h>

#include "posetab/diagram.hpp"
#include "posetab/error.hpp"
#include "posetab/gallery.hpp"
#include "posetab/oracle.hpp"
#include "support.hpp"

using namespace posetab;
using posetab::testing::inv;

namespace {

FgAbGroup z() { return FgAbGroup::free(1); }
FgAbGroup zn(long n) { return FgAbGroup::cyclic(Integer(n)); }

GradedPoset square() {
  return GradedPoset::validate({{"a", 0}, {"b", 1}, {"c", 1}, {"d", 2}},
                               {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

// b -> a <- c with x2 on both.
Diagram pullback() {
  const GradedPoset p = GradedPoset::validate({{"a", 1}, {"b", 0}, {"c", 0}}, {{"b", "a"}, {"c", "a"}});
  return validate_functor(p, {{"a", z()}, {"b", z()}, {"c", z()}},
                          {{{"b", "a"}, AbHom(z(), z(), Matrix{{2}})}, {{"c", "a"}, AbHom(z(), z(), Matrix{{2}})}});
}

Diagram chain_2_3() { return telescope_diagram({z(), z(), z()}, {Matrix{{2}}, Matrix{{3}}}); }

std::size_t idx(const Diagram& f, const std::string& id) { return f.poset().index(id); }

}  // namespace

TEST(Functor, IntroPushoutIsValid) {
  const Diagram f = intro_pushout();
  EXPECT_EQ(eval_hom(f, "a", "b").matrix(), Matrix{{2}});
  EXPECT_TRUE(equal(eval_hom(f, "b", "b"), AbHom::identity(z())));
}

TEST(Functor, DiamondIsRejected) {
  const auto hom = [](long k) { return AbHom(z(), z(), Matrix{{k}}); };
  try {
    validate_functor(square(), {{"a", z()}, {"b", z()}, {"c", z()}, {"d", z()}},
                     {{{"a", "b"}, hom(1)}, {{"a", "c"}, hom(1)}, {{"b", "d"}, hom(2)}, {{"c", "d"}, hom(3)}});
    FAIL() << "expected a diamond error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Diamond);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("b"), std::string::npos);
    EXPECT_NE(msg.find("c"), std::string::npos);
  }
  EXPECT_NO_THROW(
      validate_functor(square(), {{"a", z()}, {"b", z()}, {"c", z()}, {"d", z()}},
                       {{{"a", "b"}, hom(2)}, {{"a", "c"}, hom(3)}, {{"b", "d"}, hom(3)}, {{"c", "d"}, hom(2)}}));
}

TEST(Functor, DiamondUpToRelations) {
  // Paths 1 and 3 agree in Z/2.
  const auto hom = [](const FgAbGroup& s, const FgAbGroup& t, long k) { return AbHom(s, t, Matrix{{k}}); };
  EXPECT_NO_THROW(validate_functor(
      square(), {{"a", z()}, {"b", z()}, {"c", z()}, {"d", zn(2)}},
      {{{"a", "b"}, hom(z(), z(), 1)}, {{"a", "c"}, hom(z(), z(), 1)}, {{"b", "d"}, hom(z(), zn(2), 1)},
       {{"c", "d"}, hom(z(), zn(2), 3)}}));
}

TEST(Functor, MissingDataAndMismatch) {
  const GradedPoset p = pushout_poset();
  try {
    validate_functor(p, {{"a", z()}, {"b", z()}}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingData);
  }
  try {
    validate_functor(p, {{"a", z()}, {"b", z()}, {"c", z()}}, {{{"a", "b"}, AbHom::identity(z())}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingData);
  }
  try {
    validate_functor(p, {{"a", z()}, {"b", FgAbGroup::free(2)}, {"c", z()}},
                     {{{"a", "b"}, AbHom::identity(z())}, {{"a", "c"}, AbHom::identity(z())}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Mismatch);
  }
}

TEST(Functor, TrivialGroupsAlwaysValid) {
  const GradedPoset p = square();
  std::map<std::string, FgAbGroup> groups;
  std::map<IdPair, AbHom> maps;
  for (const auto& o : p.objects()) groups[o.id] = FgAbGroup::trivial();
  for (const auto& [a, b] : p.covers()) maps[{p.id(a), p.id(b)}] = AbHom::zero(FgAbGroup::trivial(), FgAbGroup::trivial());
  EXPECT_NO_THROW(validate_functor(p, groups, maps));
}

TEST(Eval, Composites) {
  const Diagram f = chain_2_3();
  EXPECT_EQ(eval_hom(f, "a0", "a2").matrix(), Matrix{{6}});
  try {
    eval_hom(f, "a2", "a0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoArrow);
  }
}

TEST(Images, ImAt) {
  const Diagram f = intro_pushout();
  EXPECT_TRUE(same_subgroup(im_at(f, idx(f, "b")), Subgroup(z(), Matrix{{2}})));
  EXPECT_TRUE(same_subgroup(im_at(f, idx(f, "a")), Subgroup::trivial(z())));
  const Diagram g = chain_2_3();
  EXPECT_TRUE(same_subgroup(im_at(g, idx(g, "a2")), Subgroup(z(), Matrix{{3}})));
  EXPECT_TRUE(same_subgroup(im_at(g, idx(g, "a2")), im_at_all_arrows(g, idx(g, "a2"))));
}

TEST(Images, CokerAt) {
  const Diagram f = intro_pushout();
  EXPECT_EQ(coker_at(f, idx(f, "b")).group.invariants(), inv(0, {2}));
  EXPECT_EQ(coker_at(f, idx(f, "a")).group.invariants(), inv(1, {}));
  for (long n : {3, 4}) EXPECT_EQ(coker_at(times_n(n), 1).group.invariants(), inv(0, {n}));
}

TEST(Kernels, KerAtAndCoim) {
  const Diagram f = pullback();
  EXPECT_TRUE(same_subgroup(ker_at(f, idx(f, "a")), Subgroup::whole(z())));
  EXPECT_TRUE(same_subgroup(ker_at(f, idx(f, "b")), Subgroup::trivial(z())));
  EXPECT_EQ(coim_at(f, idx(f, "b")).group.invariants(), inv(1, {}));
  const Diagram c = constant_on_chain(5, 1);
  EXPECT_TRUE(same_subgroup(ker_at(c, 0), Subgroup::trivial(zn(5))));
}

TEST(Kernels, AllArrowsAgreeWithCovers) {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const Diagram f = random_instance(small_config(s));
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_TRUE(same_subgroup(ker_at(f, i), ker_at_covers(f, i))) << "seed " << s;
      EXPECT_TRUE(same_subgroup(im_at(f, i), im_at_all_arrows(f, i))) << "seed " << s;
    }
  }
}

TEST(CokerFunctor, Values) {
  const Diagram f = intro_pushout();
  const CokerFunctor c = coker_functor(f);
  EXPECT_EQ(c.diagram.group(idx(f, "a")).invariants(), inv(1, {}));
  EXPECT_EQ(c.diagram.group(idx(f, "b")).invariants(), inv(0, {2}));
  for (const auto& [key, h] : c.diagram.cover_maps()) EXPECT_TRUE(h.is_zero());
  const CokerFunctor r = coker_functor(representable(pushout_poset(), 0));
  EXPECT_EQ(r.diagram.group(1).invariants(), inv(0, {}));
  EXPECT_EQ(r.diagram.group(2).invariants(), inv(0, {}));
}

TEST(CokerPrime, SummandsAndProjection) {
  const Diagram f = intro_pushout();
  const CokerPrimeFunctor c = coker_prime_functor(f);
  const std::size_t b = idx(f, "b");
  EXPECT_EQ(c.diagram.group(b).invariants(), inv(1, {2}));
  EXPECT_EQ(c.summand_sources[b].size(), 2u);
  EXPECT_EQ(c.diagram.group(idx(f, "a")).invariants(), coker_at(f, idx(f, "a")).group.invariants());
  EXPECT_TRUE(c.pi.component(b).is_surjective());
}

TEST(Standard, Diagrams) {
  const GradedPoset p = pushout_poset();
  const Diagram r = build_standard_diagram(StandardKind::Representable, p, "a");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.group(i).invariants(), inv(1, {}));
  const Diagram s = build_standard_diagram(StandardKind::Skyscraper, p, "b", zn(3));
  EXPECT_EQ(s.group(p.index("b")).invariants(), inv(0, {3}));
  EXPECT_EQ(s.group(p.index("a")).invariants(), inv(0, {}));
  const Diagram c = build_standard_diagram(StandardKind::Constant, chain_poset(3), {}, zn(7));
  for (const auto& [key, h] : c.cover_maps()) EXPECT_TRUE(equal(h, AbHom::identity(zn(7))));
  EXPECT_THROW(build_standard_diagram(StandardKind::Representable, p, "nope"), Error);
}

TEST(Adjunction, SkyscraperRoundTrip) {
  const Diagram f = intro_pushout();
  const std::size_t b = idx(f, "b");
  const FgAbGroup cok = coker_at(f, b).group;
  const AbHom h = AbHom::identity(cok);
  const NatTransformation eta = check_adjunction_instance(f, b, cok, h);
  EXPECT_TRUE(eta.component(idx(f, "a")).is_zero());
  EXPECT_FALSE(eta.component(b).is_zero());
  EXPECT_TRUE(equal(factor_through_coker(eta, b), h));
  const NatTransformation zero = check_adjunction_instance(f, b, cok, AbHom::zero(cok, cok));
  for (const auto& c : zero.components()) EXPECT_TRUE(c.is_zero());
}

TEST(Adjunction, FailingSquare) {
  const Diagram f = intro_pushout();
  const std::size_t a = idx(f, "a"), b = idx(f, "b");
  const Diagram sky = skyscraper(f.poset(), b, z());
  std::vector<AbHom> comps;
  for (std::size_t i = 0; i < f.size(); ++i) comps.push_back(AbHom::zero(f.group(i), sky.group(i)));
  comps[b] = AbHom::identity(z());
  // F(a -> b) = 2 is not killed, so the (a, b) square fails.
  try {
    NatTransformation(f, sky, comps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNatural);
  }
  (void)a;
}

TEST(Sums, DirectSumAndPresentation) {
  const GradedPoset p = pushout_poset();
  const Diagram s = direct_sum({representable(p, 0), skyscraper(p, 1, zn(2))});
  EXPECT_EQ(s.group(1).invariants(), inv(1, {2}));
  const Matrix u{{1, 1}, {0, 1}}, ui{{1, -1}, {0, 1}};
  std::vector<Matrix> us, uis;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t r = s.group(i).ambient_rank();
    us.push_back(r == 2 ? u : Matrix::identity(r));
    uis.push_back(r == 2 ? ui : Matrix::identity(r));
  }
  const Diagram t = change_presentation(s, us, uis);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(t.group(i).invariants(), s.group(i).invariants());
}

TEST(Dual, HomIntoZ) {
  const Diagram f = intro_pushout();
  const Diagram d = dual_diagram(f);
  EXPECT_EQ(d.poset().direction(), Direction::Decreasing);
  EXPECT_TRUE(d.poset().leq(idx(f, "b"), idx(f, "a")));
  EXPECT_EQ(d.cover_map(idx(f, "b"), idx(f, "a")).matrix(), Matrix{{2}});
  // Torsion dualizes to zero.
  EXPECT_EQ(dual_diagram(red_n(3)).group(1).invariants(), inv(0, {}));
}
