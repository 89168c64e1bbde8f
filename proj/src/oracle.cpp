#include "posetab/oracle.hpp"

#include "posetab/error.hpp"

namespace posetab {

namespace {

[[noreturn]] void violation(const std::string& msg) { throw Error(ErrorKind::OracleViolation, msg); }

bool objectwise_free(const Diagram& f) {
  for (const auto& g : f.groups())
    if (!g.invariants().is_free()) return false;
  return true;
}

GroupInvariants uct_prediction(const GroupInvariants& hom_part, const GroupInvariants* ext_part) {
  GroupInvariants g;
  g.free_rank = hom_part.free_rank;
  if (ext_part) g.torsion = ext_part->torsion;
  return g;
}

}  // namespace

Diagram with_direction(const Diagram& f, Direction d) {
  if (f.poset().direction() == d) return f;
  return Diagram::validate(f.poset().redeclared(d), f.groups(), f.cover_maps());
}

GenConfig pseudo_projective_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_objects = 10;
  cfg.max_degree_span = 3;
  cfg.family = seed % 2 ? PosetFamily::Forest : PosetFamily::Layered;
  return cfg;
}

Diagram pseudo_projective_instance(std::uint64_t seed) {
  const GenConfig cfg = pseudo_projective_config(seed);
  return gen_diagram(cfg, gen_poset(cfg), DiagramMode::PseudoProjectiveByConstruction);
}

GenConfig small_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_objects = 5;
  cfg.max_degree_span = 2;
  cfg.max_group_rank = 2;
  cfg.family = seed % 2 ? PosetFamily::Forest : PosetFamily::Layered;
  return cfg;
}

Diagram random_instance(const GenConfig& cfg) {
  const GradedPoset p = gen_poset(cfg);
  DiagramMode mode;
  switch (cfg.seed % 3) {
    case 0:
      mode = DiagramMode::SumsOfStandard;
      break;
    case 1:
      mode = is_hasse_forest(p) ? DiagramMode::FreeMapsOnForest : DiagramMode::SumsOfStandard;
      break;
    default:
      mode = DiagramMode::PseudoProjectiveByConstruction;
  }
  return gen_diagram(cfg, p, mode);
}

void check_pseudo_projective_acyclic(const Diagram& f) {
  const PseudoVerdict pp = is_pseudo_projective(f);
  if (!pp.holds)
    violation("generated diagram is not pseudo-projective (fails at " + f.poset().id(pp.failure->object) +
              ", d = " + std::to_string(pp.failure->d) + ")");
  const AcyclicityResult colim = is_acyclic(f, LimitKind::Colim);
  if (!colim.acyclic)
    violation("pseudo-projective diagram has colim_" + std::to_string(*colim.degree) + " = " +
              to_string(colim.group));
}

void check_dual(const Diagram& f) {
  const Diagram g = dual_diagram(f);
  if (is_pseudo_injective(g).holds) {
    const AcyclicityResult lim = is_acyclic(g, LimitKind::Lim);
    if (!lim.acyclic)
      violation("pseudo-injective dual has lim^" + std::to_string(*lim.degree) + " = " + to_string(lim.group));
  }
  if (!objectwise_free(f)) return;
  const long top = static_cast<long>(f.poset().longest_chain()) + 1;
  const auto colim = derived_table(f, LimitKind::Colim, top);
  const auto lim = derived_table(g, LimitKind::Lim, top);
  for (long i = 0; i <= top; ++i) {
    const GroupInvariants expected = uct_prediction(colim[i], i > 0 ? &colim[i - 1] : nullptr);
    if (!(lim[i] == expected))
      violation("lim^" + std::to_string(i) + " of the dual is " + to_string(lim[i]) + ", expected " +
                to_string(expected));
  }
}

void check_degree_zero(const Diagram& f) {
  const GroupInvariants h0 = homology_at(chain_complex(f), 0).group.invariants();
  const GroupInvariants direct = colimit_direct(f).invariants();
  if (!(h0 == direct)) violation("H_0 = " + to_string(h0) + " but the coequalizer is " + to_string(direct));
  const GroupInvariants c0 = homology_at(cochain_complex(f), 0).group.invariants();
  const GroupInvariants families = limit_direct(f).invariants();
  if (!(c0 == families)) violation("H^0 = " + to_string(c0) + " but the compatible families give " + to_string(families));
}

void check_spectral(const Diagram& f) {
  for (int v = 1; v <= 8; ++v) {
    const Diagram g = with_direction(f, table_variant(v).direction);
    convergence_check(g, v);
    SpectralSequence ss(build_filtered(g, v));
    const int stable = ss.stable_page();
    for (int r = 0; r <= stable; ++r) {
      std::string detail;
      if (!ss.recurrence_holds(r, &detail))
        throw Error(ErrorKind::ConvergenceViolation,
                    "variant " + std::to_string(v) + ", page " + std::to_string(r) + ": " + detail);
    }
  }
}

void check_normalization(const Diagram& f) {
  for (ComplexKind kind : {ComplexKind::Chain, ComplexKind::Cochain}) {
    const ChainComplex normalized = nerve_complex(f, kind);
    const std::size_t top = normalized.length() + 1;
    const ChainComplex full = unnormalized_complex(f, kind, top);
    for (long n = 0; n < static_cast<long>(top); ++n) {
      const GroupInvariants a = homology_at(normalized, n).group.invariants();
      const GroupInvariants b = homology_at(full, n).group.invariants();
      if (!(a == b))
        violation(std::string(kind == ComplexKind::Chain ? "H_" : "H^") + std::to_string(n) +
                  ": normalized " + to_string(a) + ", unnormalized " + to_string(b));
    }
  }
}

OracleSummary run_oracles(std::uint64_t start, std::size_t count, std::size_t spectral_every,
                          const std::function<void(std::uint64_t)>& progress) {
  OracleSummary s;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = start + k;
    const Diagram f = pseudo_projective_instance(seed);
    check_pseudo_projective_acyclic(f);
    check_dual(f);
    if (is_pseudo_injective(dual_diagram(f)).holds) ++s.pseudo_injective_duals;
    check_degree_zero(f);
    if (spectral_every && k % spectral_every == 0) {
      const Diagram small = random_instance(small_config(seed));
      check_spectral(small);
      check_normalization(small);
      ++s.spectral_instances;
    }
    ++s.instances;
    if (progress) progress(seed);
  }
  return s;
}

}  // namespace posetab
