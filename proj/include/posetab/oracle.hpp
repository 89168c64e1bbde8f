#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "posetab/classify.hpp"
#include "posetab/randgen.hpp"
#include "posetab/spectral.hpp"

namespace posetab {

/// Same groups and maps over the poset with declared degrees flipped to `d`.
Diagram with_direction(const Diagram& f, Direction d);

/// Up to 10 objects, degree span up to 3; forest and layered posets alternate.
GenConfig pseudo_projective_config(std::uint64_t seed);
Diagram pseudo_projective_instance(std::uint64_t seed);
/// Small instances (at most 5 objects) for spectral and normalization checks.
GenConfig small_config(std::uint64_t seed);
Diagram random_instance(const GenConfig& cfg);

// Each check throws OracleViolation or ConvergenceViolation on failure.

/// Pseudo-projective (by construction) and colim-acyclic.
void check_pseudo_projective_acyclic(const Diagram& f);
/// Over the Hom(-, Z) dual on the opposite poset: pseudo-injective implies
/// lim-acyclic, and lim^i of the dual matches colim_i and colim_{i-1} of f
/// by universal coefficients when f is objectwise free.
void check_dual(const Diagram& f);
/// H_0 of the chain complex against the coequalizer, H^0 against the
/// compatible families.
void check_degree_zero(const Diagram& f);
/// All eight filtered complexes: E_∞ against the derived functors, the page
/// recurrence up to the stable page and stability by page span + 2.
void check_spectral(const Diagram& f);
/// Normalized and unnormalized complexes give the same homology.
void check_normalization(const Diagram& f);

struct OracleSummary {
  std::size_t instances = 0;
  std::size_t pseudo_injective_duals = 0;
  std::size_t spectral_instances = 0;
};

/// Runs the randomized oracles over seeds start .. start+count-1; spectral
/// and normalization checks run on every `spectral_every`-th seed (0: never).
/// `progress` is called after each seed.
OracleSummary run_oracles(std::uint64_t start, std::size_t count, std::size_t spectral_every,
                          const std::function<void(std::uint64_t)>& progress = {});

}  // namespace posetab
