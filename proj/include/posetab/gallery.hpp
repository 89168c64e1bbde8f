#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "posetab/classify.hpp"
#include "posetab/diagram.hpp"

namespace posetab {

/// Pushout shape a -> b, a -> c with the given groups and maps f, g.
Diagram pushout_diagram(const FgAbGroup& a, const FgAbGroup& b, const FgAbGroup& c, const Matrix& f,
                        const Matrix& g);

/// Z <-2- Z -2-> Z.
Diagram intro_pushout();
/// 0 <- Z -> Z.
Diagram zero_one_pushout();
/// a -> b given by Z -n-> Z.
Diagram times_n(long n);
/// a -> b given by Z -> Z/n.
Diagram red_n(long n);
/// Constant Z/p on a0 -> ... -> aL.
Diagram constant_on_chain(long p, std::size_t length, Direction direction = Direction::Increasing);

/// Telescope a0 -> a1 -> ... given by its groups and the matrices of f1, f2, ...
Diagram telescope_diagram(const std::vector<FgAbGroup>& groups, const std::vector<Matrix>& maps);

/// The projectivity criterion on the pushout shape, evaluated from group
/// data only: F(a), F(b)/Im f, F(c)/Im g free and f, g injective.
bool pushout_projective_criterion(const Diagram& f);
/// Sufficient condition for colim-acyclicity on the pushout: f, g injective.
bool pushout_acyclic_criterion(const Diagram& f);
/// Projectivity criterion on a finite telescope a0 -> ... -> aL.
bool telescope_projective_criterion(const Diagram& f);
/// Sufficient condition for colim-acyclicity on a finite telescope.
bool telescope_acyclic_criterion(const Diagram& f);

struct GalleryResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

/// Runs every built-in example against its expected verdicts. When `dir` is
/// given, the shipped JSON documents there are also parsed and compared.
std::vector<GalleryResult> run_gallery(const std::optional<std::filesystem::path>& dir = {});

/// Documents shipped in gallery/, by file name.
std::vector<std::pair<std::string, Diagram>> gallery_documents();

}  // namespace posetab
