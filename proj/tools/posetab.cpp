// posetab: derived limits and projectivity checks for diagrams of abelian
// groups over graded posets.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "posetab/gallery.hpp"
#include "posetab/io.hpp"
#include "posetab/oracle.hpp"

using namespace posetab;

namespace {

struct Options {
  std::string input;
  bool json = false;
  bool infer = false;
  long max_degree = -1;
  int variant = 1;
  std::string pages = "0..3";
  bool convergence = false;
  std::size_t seeds = 100;
  std::uint64_t seed = 1;
  std::size_t spectral_every = 10;
  std::string gallery_dir;
  std::string export_dir;
  std::string family = "layered";
  std::string mode = "pseudo_projective_by_construction";
  std::size_t max_objects = 6;
  int degree_span = 2;
  std::size_t max_rank = 2;
  bool no_scramble = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Schema, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int r = std::stoi(s);
      return {r, r};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Validation, "page range must look like r0..r1, got '" + s + "'");
  }
}

long default_degree(const Diagram& f, long requested) {
  return requested >= 0 ? requested : static_cast<long>(f.poset().longest_chain());
}

void emit(const Options& o, const Json& report, const std::string& text) {
  if (o.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

std::string table_text(const std::string& name, const std::vector<GroupInvariants>& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.size(); ++i) os << name << i << " = " << to_string(t[i]) << "\n";
  return os.str();
}

int cmd_validate(const Options& o) {
  const std::string bytes = read_input(o.input);
  const ParsedDocument doc = parse_document(bytes, o.infer);
  Json r = make_report("validate", sha256_hex(bytes));
  r["valid"] = true;
  r["objects"] = doc.poset().size();
  r["covers"] = doc.poset().covers().size();
  emit(o, r,
       "ok: " + std::to_string(doc.poset().size()) + " objects, " + std::to_string(doc.poset().covers().size()) +
           " covers\n");
  return 0;
}

int cmd_derived(const Options& o, LimitKind kind) {
  const std::string bytes = read_input(o.input);
  const ParsedDocument doc = parse_document(bytes, o.infer);
  const auto table = derived_table(doc.diagram, kind, default_degree(doc.diagram, o.max_degree));
  const std::string name = to_string(kind);
  Json r = make_report(name, sha256_hex(bytes));
  r["derived"] = {{name, derived_json(table)}};
  emit(o, r, table_text(kind == LimitKind::Colim ? "colim_" : "lim^", table));
  return 0;
}

int cmd_classify(const Options& o) {
  const std::string bytes = read_input(o.input);
  const ParsedDocument doc = parse_document(bytes, o.infer);
  const ClassificationReport rep = classify(doc.diagram);
  const long top = default_degree(doc.diagram, o.max_degree);
  Json r = make_report("classify", sha256_hex(bytes));
  r["classification"] = to_json(doc.diagram, rep);
  r["derived"] = {{"colim", derived_json(derived_table(doc.diagram, LimitKind::Colim, top))},
                  {"lim", derived_json(derived_table(doc.diagram, LimitKind::Lim, top))}};
  emit(o, r, render_text(doc.diagram, rep));
  if (!rep.oracle.consistent() || !rep.structure_consistent) return 2;
  return 0;
}

int cmd_spectral(const Options& o) {
  const std::string bytes = read_input(o.input);
  const ParsedDocument doc = parse_document(bytes, o.infer);
  const auto [r0, r1] = parse_range(o.pages);
  if (r0 < 0 || r1 < r0) throw Error(ErrorKind::Validation, "page range must satisfy 0 <= r0 <= r1");
  SpectralSequence ss(build_filtered(doc.diagram, o.variant));
  Json r = make_report("spectral", sha256_hex(bytes));
  r["variant"] = {{"number", o.variant}, {"description", describe(table_variant(o.variant))}};
  r["stable_page"] = ss.stable_page();
  Json pages = Json::array();
  std::string text = describe(table_variant(o.variant)) + "\n";
  for (int k = r0; k <= r1; ++k) {
    const SSPage& page = ss.page(k);
    pages.push_back(to_json(page));
    text += render_grid(page);
  }
  r["pages"] = pages;
  if (o.convergence) {
    const ConvergenceReport c = convergence_check(doc.diagram, o.variant);
    r["convergence"] = to_json(c);
    text += "converged by page " + std::to_string(c.stable_page) + "\n";
  }
  emit(o, r, text);
  return 0;
}

int cmd_gallery(const Options& o) {
  if (!o.export_dir.empty()) {
    for (const auto& [name, f] : gallery_documents()) {
      std::ofstream out(std::filesystem::path(o.export_dir) / name);
      out << serialize_text(f);
    }
  }
  std::optional<std::filesystem::path> dir;
  if (!o.gallery_dir.empty()) dir = o.gallery_dir;
  const auto results = run_gallery(dir);
  Json r = make_report("gallery", sha256_hex(""));
  Json list = Json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& g : results) {
    ok = ok && g.passed;
    list.push_back({{"name", g.name}, {"passed", g.passed}, {"failures", g.failures}});
    text << (g.passed ? "ok    " : "FAIL  ") << g.name << "\n";
    for (const auto& f : g.failures) text << "      " << f << "\n";
  }
  r["examples"] = list;
  r["passed"] = ok;
  text << results.size() << " examples, " << (ok ? "all passed" : "some failed") << "\n";
  emit(o, r, text.str());
  return ok ? 0 : 2;
}

GenConfig gen_config(const Options& o) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.family = parse_family(o.family);
  cfg.max_objects = o.max_objects;
  cfg.max_degree_span = o.degree_span;
  cfg.max_group_rank = o.max_rank;
  cfg.scramble = !o.no_scramble;
  return cfg;
}

int cmd_generate(const Options& o) {
  const GenConfig cfg = gen_config(o);
  const Diagram f = gen_diagram(cfg, gen_poset(cfg), parse_mode(o.mode));
  std::cout << serialize_text(f);
  return 0;
}

int cmd_oracle(const Options& o) {
  const OracleSummary s = run_oracles(o.seed, o.seeds, o.spectral_every);
  Json r = make_report("oracle", sha256_hex(""), o.seed);
  r["oracle"] = {{"instances", s.instances},
                 {"pseudo_injective_duals", s.pseudo_injective_duals},
                 {"spectral_instances", s.spectral_instances},
                 {"passed", true}};
  emit(o, r,
       std::to_string(s.instances) + " instances passed (" + std::to_string(s.spectral_instances) +
           " with spectral and normalization checks, " + std::to_string(s.pseudo_injective_duals) +
           " pseudo-injective duals)\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("POSETAB_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring POSETAB_SEED=" << env << "\n";
    }
  }

  CLI::App app{"Derived limits of diagrams of abelian groups over graded posets"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Machine-readable output; errors go to stderr as JSON");

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Diagram document, or - for stdin")->required();
    sub->add_flag("--infer-degrees", o.infer, "Compute degrees from the covers");
    sub->add_flag("--json", o.json, "Machine-readable output");
    return sub;
  };

  auto* validate = with_input(app.add_subcommand("validate", "Check a diagram document"));
  auto* colim = with_input(app.add_subcommand("colim", "Derived functors of the colimit"));
  colim->add_option("--max-degree", o.max_degree, "Highest degree (default: longest chain)");
  auto* lim = with_input(app.add_subcommand("lim", "Derived functors of the limit"));
  lim->add_option("--max-degree", o.max_degree, "Highest degree (default: longest chain)");
  auto* cls = with_input(app.add_subcommand("classify", "Projectivity, injectivity and acyclicity verdicts"));
  cls->add_option("--max-degree", o.max_degree, "Highest degree of the derived tables");
  auto* spec = with_input(app.add_subcommand("spectral", "Pages of a filtered nerve complex"));
  spec->add_option("--variant", o.variant, "Row 1..8 of the variant table")->check(CLI::Range(1, 8));
  spec->add_option("--pages", o.pages, "Page range r0..r1");
  spec->add_flag("--convergence", o.convergence, "Check E_infinity against the derived functors");

  auto* gal = app.add_subcommand("gallery", "Run the built-in examples");
  gal->add_option("--dir", o.gallery_dir, "Also check the shipped documents in this directory");
  gal->add_option("--export", o.export_dir, "Write the gallery documents to this directory");
  gal->add_flag("--json", o.json, "Machine-readable output");

  auto* gen = app.add_subcommand("generate", "Random diagram document");
  gen->add_option("--seed", o.seed, "Seed (default: POSETAB_SEED or 1)");
  gen->add_option("--family", o.family, "forest | layered | sums_of_standard");
  gen->add_option("--mode", o.mode, "free_maps_on_forest | sums_of_standard | pseudo_projective_by_construction");
  gen->add_option("--max-objects", o.max_objects);
  gen->add_option("--degree-span", o.degree_span);
  gen->add_option("--max-rank", o.max_rank);
  gen->add_flag("--no-scramble", o.no_scramble, "Keep diagonal presentations");

  auto* orc = app.add_subcommand("oracle", "Randomized acyclicity, duality and convergence checks");
  orc->add_option("--seeds", o.seeds, "Number of instances");
  orc->add_option("--seed", o.seed, "First seed (default: POSETAB_SEED or 1)");
  orc->add_option("--spectral-every", o.spectral_every, "Spectral checks on every k-th seed (0: off)");
  orc->add_flag("--json", o.json, "Machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (colim->parsed()) return cmd_derived(o, LimitKind::Colim);
    if (lim->parsed()) return cmd_derived(o, LimitKind::Lim);
    if (cls->parsed()) return cmd_classify(o);
    if (spec->parsed()) return cmd_spectral(o);
    if (gal->parsed()) return cmd_gallery(o);
    if (gen->parsed()) return cmd_generate(o);
    if (orc->parsed()) return cmd_oracle(o);
  } catch (const Error& e) {
    if (o.json)
      std::cerr << error_json(e).dump() << "\n";
    else
      std::cerr << "error: " << to_string(e.kind()) << ": " << e.what()
                << (e.pointer().empty() ? "" : " at " + e.pointer()) << "\n";
    return e.is_bug() ? 2 : 1;
  } catch (const std::logic_error& e) {
    std::cerr << (o.json ? Json{{"error", "InternalError"}, {"message", e.what()}}.dump() : std::string("internal error: ") + e.what())
              << "\n";
    return 2;
  }
  return 1;
}
