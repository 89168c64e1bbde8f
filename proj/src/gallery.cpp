#include "posetab/gallery.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "posetab/derived.hpp"
#include "posetab/io.hpp"
#include "posetab/randgen.hpp"

namespace posetab {

namespace {

Matrix scalar_1x1(long v) { return Matrix::scalar(1, Integer(v)); }

FgAbGroup z() { return FgAbGroup::free(1); }

std::string inv(const std::vector<GroupInvariants>& table) {
  std::string s = "[";
  for (std::size_t i = 0; i < table.size(); ++i) s += (i ? ", " : "") + to_string(table[i]);
  return s + "]";
}

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      result_.passed = false;
      result_.failures.push_back(what);
    }
  }

  void run(const std::function<void(Checker&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      expect(false, std::string("exception: ") + e.what());
    }
  }

  GalleryResult take() { return std::move(result_); }

 private:
  GalleryResult result_;
};

GroupInvariants invariants_of(long free_rank, std::vector<long> torsion) {
  GroupInvariants g;
  g.free_rank = static_cast<std::size_t>(free_rank);
  for (long t : torsion) g.torsion.emplace_back(t);
  return g;
}

bool free_quotient(const FgAbGroup& g, const Subgroup& s) { return quotient(g, s).group.invariants().is_free(); }

void check_colim(Checker& c, const Diagram& f, const std::vector<GroupInvariants>& expected) {
  const auto table = derived_table(f, LimitKind::Colim, static_cast<long>(expected.size()) - 1);
  c.expect(table == expected, "colim table " + inv(table) + ", expected " + inv(expected));
  c.expect(colimit_direct(f).invariants() == table[0], "colim_0 disagrees with the coequalizer");
}

std::optional<Integer> single_witness(const PseudoVerdict& v) {
  if (!v.failure || !v.failure->witness) return std::nullopt;
  const auto& w = *v.failure->witness;
  if (w.components.size() != 1 || w.components[0].size() != 1) return std::nullopt;
  return abs(w.components[0][0]);
}

// Random diagrams on a fixed shape, across every generation mode.
std::vector<Diagram> sample_on(const GradedPoset& p, std::size_t count, std::uint64_t seed0) {
  const DiagramMode modes[] = {DiagramMode::FreeMapsOnForest, DiagramMode::SumsOfStandard,
                               DiagramMode::PseudoProjectiveByConstruction};
  std::vector<Diagram> out;
  for (std::size_t s = 0; s < count; ++s) {
    GenConfig cfg;
    cfg.seed = seed0 + s;
    cfg.family = PosetFamily::Forest;
    out.push_back(gen_diagram(cfg, p, modes[s % 3]));
  }
  return out;
}

}  // namespace

Diagram pushout_diagram(const FgAbGroup& a, const FgAbGroup& b, const FgAbGroup& c, const Matrix& f,
                        const Matrix& g) {
  const GradedPoset p = pushout_poset();
  std::map<CoverKey, AbHom> maps;
  maps.emplace(CoverKey{p.index("a"), p.index("b")}, AbHom(a, b, f));
  maps.emplace(CoverKey{p.index("a"), p.index("c")}, AbHom(a, c, g));
  std::vector<FgAbGroup> groups(3);
  groups[p.index("a")] = a;
  groups[p.index("b")] = b;
  groups[p.index("c")] = c;
  return Diagram::validate(p, std::move(groups), std::move(maps));
}

Diagram intro_pushout() { return pushout_diagram(z(), z(), z(), scalar_1x1(2), scalar_1x1(2)); }

Diagram zero_one_pushout() {
  return pushout_diagram(z(), FgAbGroup::trivial(), z(), Matrix(0, 1), scalar_1x1(1));
}

Diagram times_n(long n) { return telescope_diagram({z(), z()}, {scalar_1x1(n)}); }

Diagram red_n(long n) { return telescope_diagram({z(), FgAbGroup::cyclic(Integer(n))}, {scalar_1x1(1)}); }

Diagram constant_on_chain(long p, std::size_t length, Direction direction) {
  return constant(chain_poset(length, direction), FgAbGroup::cyclic(Integer(p)));
}

Diagram telescope_diagram(const std::vector<FgAbGroup>& groups, const std::vector<Matrix>& maps) {
  if (groups.size() != maps.size() + 1) throw Error(ErrorKind::Mismatch, "a telescope needs one map per cover");
  const GradedPoset p = chain_poset(maps.size());
  std::map<CoverKey, AbHom> homs;
  for (std::size_t k = 0; k < maps.size(); ++k) homs.emplace(CoverKey{k, k + 1}, AbHom(groups[k], groups[k + 1], maps[k]));
  return Diagram::validate(p, groups, std::move(homs));
}

bool pushout_projective_criterion(const Diagram& f) {
  const GradedPoset& p = f.poset();
  const std::size_t a = p.index("a"), b = p.index("b"), c = p.index("c");
  const AbHom& ff = f.cover_map(a, b);
  const AbHom& gg = f.cover_map(a, c);
  return f.group(a).invariants().is_free() && free_quotient(f.group(b), image(ff)) &&
         free_quotient(f.group(c), image(gg)) && ff.is_injective() && gg.is_injective();
}

bool pushout_acyclic_criterion(const Diagram& f) {
  const GradedPoset& p = f.poset();
  const std::size_t a = p.index("a");
  return f.cover_map(a, p.index("b")).is_injective() && f.cover_map(a, p.index("c")).is_injective();
}

namespace {

// Objects of a telescope in chain order.
std::vector<std::size_t> chain_order(const Diagram& f) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < f.size(); ++k) order.push_back(f.poset().index("a" + std::to_string(k)));
  return order;
}

bool subset(const Subgroup& inner, const Subgroup& outer) { return contains(outer, inner).contained; }

Subgroup image_or_zero(const Diagram& f, const std::vector<std::size_t>& a, long from, std::size_t to) {
  if (from < 0) return Subgroup::trivial(f.group(a[to]));
  return image(f.eval(a[static_cast<std::size_t>(from)], a[to]));
}

}  // namespace

bool telescope_projective_criterion(const Diagram& f) {
  const auto a = chain_order(f);
  if (!f.group(a[0]).invariants().is_free()) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!free_quotient(f.group(a[i]), image(f.eval(a[i - 1], a[i])))) return false;
    if (!f.eval(a[0], a[i]).is_injective()) return false;
    // ker F(a_{i-d-1} -> a_i) inside Im F(a_{i-d-2} -> a_{i-d-1}).
    for (std::size_t d = 0; d + 1 < i; ++d) {
      const std::size_t src = i - d - 1;
      if (!subset(kernel(f.eval(a[src], a[i])).subgroup, image_or_zero(f, a, static_cast<long>(src) - 1, src)))
        return false;
    }
  }
  return true;
}

bool telescope_acyclic_criterion(const Diagram& f) {
  const auto a = chain_order(f);
  for (std::size_t i = 2; i < a.size(); ++i) {
    if (!f.eval(a[1], a[i]).is_injective()) return false;
    for (std::size_t d = 1; d < i; ++d) {
      const std::size_t src = i - d;
      if (!subset(kernel(f.eval(a[src], a[i])).subgroup, image(f.eval(a[src - 1], a[src])))) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::string, Diagram>> gallery_documents() {
  return {{"intro_pushout.json", intro_pushout()},
          {"zero_one_pushout.json", zero_one_pushout()},
          {"times_3.json", times_n(3)},
          {"red_3.json", red_n(3)},
          {"constant_z2_chain3.json", constant_on_chain(2, 3)},
          {"inverse_telescope_z3.json", constant_on_chain(3, 3, Direction::Decreasing)}};
}

std::vector<GalleryResult> run_gallery(const std::optional<std::filesystem::path>& dir) {
  std::vector<GalleryResult> results;
  auto add = [&](const std::string& name, const std::function<void(Checker&)>& body) {
    Checker c(name);
    c.run(body);
    results.push_back(c.take());
  };

  add("intro pushout Z <-2- Z -2-> Z", [](Checker& c) {
    const Diagram f = intro_pushout();
    // d: C_1 = Z(a<b) + Z(a<c) -> C_0 = Z(a) + Z(b) + Z(c).
    const Integer d[] = {-1, -1, 2, 0, 0, 2};
    const FgAbGroup boundary(3, Matrix::from_row_major(3, 2, d));
    c.expect(boundary.invariants() == invariants_of(1, {2}), "explicit boundary cokernel is " +
                                                                   to_string(boundary.invariants()));
    check_colim(c, f, {invariants_of(1, {2}), invariants_of(0, {})});
    const auto r = classify(f);
    c.expect(r.pseudo_projective.holds, "expected pseudo-projective");
    c.expect(!r.projective.holds, "expected not projective");
    c.expect(r.projective.object && f.poset().id(*r.projective.object) == "b", "obstruction should sit at b");
    c.expect(coker_at(f, f.poset().index("b")).group.invariants() == invariants_of(0, {2}), "Coker_F(b) != Z/2");
    c.expect(r.colim.acyclic, "expected colim-acyclic");
  });

  add("pushout 0 <- Z -> Z", [](Checker& c) {
    const Diagram f = zero_one_pushout();
    const auto r = classify(f);
    c.expect(!r.pseudo_projective.holds, "expected not pseudo-projective");
    c.expect(single_witness(r.pseudo_projective) == Integer(1), "expected witness 1 in F(a)");
    check_colim(c, f, {invariants_of(0, {}), invariants_of(0, {})});
  });

  for (long n : {2, 3, 5, 12}) {
    add("Z -" + std::to_string(n) + "-> Z", [n](Checker& c) {
      const Diagram f = times_n(n);
      const auto r = classify(f);
      c.expect(r.pseudo_projective.holds, "expected pseudo-projective");
      c.expect(!r.projective.holds, "expected not projective");
      c.expect(coker_at(f, f.poset().index("a1")).group.invariants() == invariants_of(0, {n}),
               "Coker at a1 should be Z/n");
      check_colim(c, f, {invariants_of(1, {}), invariants_of(0, {})});
    });
    add("red_" + std::to_string(n) + ": Z -> Z/" + std::to_string(n), [n](Checker& c) {
      const Diagram f = red_n(n);
      const auto r = classify(f);
      c.expect(!r.pseudo_projective.holds, "expected not pseudo-projective");
      c.expect(single_witness(r.pseudo_projective) == Integer(n), "expected witness n in F(a0)");
      c.expect(!r.projective.holds, "expected not projective");
      check_colim(c, f, {invariants_of(0, {n}), invariants_of(0, {})});
    });
  }

  add("representables on the pushout", [](Checker& c) {
    const GradedPoset p = pushout_poset();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Diagram f = representable(p, i);
      const auto r = classify(f);
      c.expect(r.projective.holds, "representable(" + p.id(i) + ") should be projective");
      c.expect(r.colim.acyclic, "representable(" + p.id(i) + ") should be colim-acyclic");
      c.expect(derived_functor(f, LimitKind::Colim, 0).invariants() == invariants_of(1, {}),
               "colim of representable(" + p.id(i) + ") should be Z");
    }
  });

  for (Direction dir : {Direction::Increasing, Direction::Decreasing}) {
    for (long p : {2, 3, 5}) {
      for (std::size_t len : {1u, 2u, 4u}) {
        const std::string shape = dir == Direction::Increasing ? "chain" : "inverse telescope truncation";
        add("constant Z/" + std::to_string(p) + " on " + shape + " of length " + std::to_string(len),
            [=](Checker& c) {
              const Diagram f = constant_on_chain(p, len, dir);
              const auto r = classify(f);
              c.expect(r.pseudo_injective.holds, "expected pseudo-injective");
              c.expect(r.lim.acyclic, "expected lim-acyclic");
              c.expect(!r.injective.holds, "expected not injective");
              c.expect(r.injective.reason.find("not injective in Ab") != std::string::npos,
                       "injectivity should fail on ker_F, got: " + r.injective.reason);
              c.expect(r.pseudo_projective.holds, "expected pseudo-projective");
              c.expect(!r.projective.holds, "expected not projective");
              c.expect(r.projective.reason.find("Coker_F") != std::string::npos,
                       "projectivity should fail on a cokernel, got: " + r.projective.reason);
              c.expect(r.colim.acyclic, "expected colim-acyclic");
            });
      }
    }
  }

  add("pushout projectivity criterion", [](Checker& c) {
    std::vector<Diagram> cases = sample_on(pushout_poset(), 60, 7001);
    cases.push_back(intro_pushout());
    cases.push_back(zero_one_pushout());
    cases.push_back(pushout_diagram(z(), z(), FgAbGroup::free(2), scalar_1x1(1),
                                    Matrix::from_row_major(2, 1, std::vector<Integer>{1, 0})));
    std::size_t k = 0;
    for (const auto& f : cases) {
      const bool expected = pushout_projective_criterion(f);
      c.expect(is_projective(f).holds == expected, "case " + std::to_string(k) + ": verdict disagrees");
      if (pushout_acyclic_criterion(f))
        c.expect(is_acyclic(f, LimitKind::Colim).acyclic, "case " + std::to_string(k) + ": monos but not acyclic");
      ++k;
    }
  });

  add("telescope criteria", [](Checker& c) {
    std::vector<Diagram> cases;
    for (std::size_t len : {2u, 3u, 4u}) {
      auto more = sample_on(chain_poset(len), 30, 9001 + 100 * len);
      cases.insert(cases.end(), more.begin(), more.end());
    }
    cases.push_back(times_n(2));
    cases.push_back(red_n(4));
    cases.push_back(telescope_diagram({z(), z(), z()}, {scalar_1x1(1), scalar_1x1(0)}));
    std::size_t k = 0;
    for (const auto& f : cases) {
      const std::string tag = "case " + std::to_string(k++);
      c.expect(is_projective(f).holds == telescope_projective_criterion(f), tag + ": projectivity disagrees");
      bool all_mono = true;
      for (const auto& [key, h] : f.cover_maps()) all_mono = all_mono && h.is_injective();
      if (all_mono) c.expect(telescope_acyclic_criterion(f), tag + ": monos should satisfy the acyclic criterion");
      if (telescope_acyclic_criterion(f))
        c.expect(is_acyclic(f, LimitKind::Colim).acyclic, tag + ": criterion holds but not acyclic");
    }
  });

  if (dir) {
    for (const auto& [name, expected] : gallery_documents()) {
      add("document " + name, [&, path = *dir / name](Checker& c) {
        std::ifstream in(path);
        c.expect(static_cast<bool>(in), "cannot open " + path.string());
        if (!in) return;
        std::stringstream ss;
        ss << in.rdbuf();
        const ParsedDocument doc = parse_document(ss.str());
        c.expect(doc.diagram == expected, "parsed diagram differs from the built-in one");
        c.expect(parse_document_json(serialize(doc.diagram)).diagram == doc.diagram, "round trip changed the diagram");
      });
    }
  }
  return results;
}

}  // namespace posetab
