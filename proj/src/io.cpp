#include "posetab/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace posetab {

namespace {

std::string escape(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

[[noreturn]] void schema(const std::string& pointer, const std::string& msg) {
  throw Error(ErrorKind::Schema, msg, pointer.empty() ? "/" : pointer);
}

[[noreturn]] void invalid(const std::string& pointer, const std::string& msg) {
  throw Error(ErrorKind::Validation, msg, pointer.empty() ? "/" : pointer);
}

const Json& field(const Json& obj, const std::string& key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(at, "missing field '" + key + "'");
  return *it;
}

long as_long(const Json& v, const std::string& at) {
  if (!v.is_number_integer()) schema(at, "expected an integer");
  return v.get<long>();
}

Integer as_integer(const Json& v, const std::string& at) {
  if (v.is_number_unsigned()) return Integer(v.get<unsigned long>());
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + static_cast<long>(start), s.end(), ::isdigit)) return Integer(s);
  }
  schema(at, "expected an integer or a decimal string");
}

Matrix parse_matrix(const Json& m, const std::string& at) {
  if (!m.is_object()) schema(at, "matrix must be an object with rows, cols and data");
  const long rows = as_long(field(m, "rows", at), at + "/rows");
  const long cols = as_long(field(m, "cols", at), at + "/cols");
  if (rows < 0 || cols < 0) schema(at, "matrix dimensions must be nonnegative");
  const Json& data = field(m, "data", at);
  if (!data.is_array()) schema(at + "/data", "expected an array");
  if (data.size() != static_cast<std::size_t>(rows * cols))
    invalid(at + "/data", "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(data.size()));
  Vector values;
  for (std::size_t k = 0; k < data.size(); ++k) values.push_back(as_integer(data[k], at + "/data/" + std::to_string(k)));
  return Matrix::from_row_major(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), values);
}

Json matrix_json(const Matrix& m) {
  Json data = Json::array();
  for (const auto& v : m.row_major()) data.push_back(integer_json(v));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

// Where in the document a poset validation error points.
std::string locate(const Error& e, const std::vector<PosetObject>& objects, const std::vector<IdPair>& covers) {
  switch (e.kind()) {
    case ErrorKind::DuplicateId: {
      std::set<std::string> seen;
      for (std::size_t i = 0; i < objects.size(); ++i)
        if (!seen.insert(objects[i].id).second) return "/poset/objects/" + std::to_string(i) + "/id";
      break;
    }
    case ErrorKind::UnknownId: {
      std::set<std::string> ids;
      for (const auto& o : objects) ids.insert(o.id);
      for (std::size_t k = 0; k < covers.size(); ++k) {
        if (!ids.contains(covers[k].first)) return "/poset/covers/" + std::to_string(k) + "/0";
        if (!ids.contains(covers[k].second)) return "/poset/covers/" + std::to_string(k) + "/1";
      }
      break;
    }
    case ErrorKind::Validation: {
      std::set<IdPair> seen;
      for (std::size_t k = 0; k < covers.size(); ++k)
        if (!seen.insert(covers[k]).second) return "/poset/covers/" + std::to_string(k);
      break;
    }
    case ErrorKind::Degree: {
      // Message names the first offending cover; find it again.
      for (std::size_t k = 0; k < covers.size(); ++k)
        if (e.what() && std::string(e.what()).find("(" + covers[k].first + ", " + covers[k].second + ")") !=
                            std::string::npos)
          return "/poset/covers/" + std::to_string(k);
      break;
    }
    default:
      break;
  }
  return "/poset/covers";
}

}  // namespace

ParsedDocument parse_document(std::string_view text, bool infer_degrees) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema("/", std::string("not valid JSON: ") + e.what());
  }
  return parse_document_json(doc, infer_degrees);
}

ParsedDocument parse_document_json(const Json& doc, bool infer_degrees) {
  if (!doc.is_object()) schema("/", "document must be a JSON object");
  ParsedDocument out;
  const Json& version = field(doc, "format_version", "");
  if (!version.is_string()) schema("/format_version", "expected a string");
  out.format_version = version.get<std::string>();
  if (out.format_version != "1" && out.format_version.rfind("1.", 0) != 0)
    schema("/format_version", "unsupported format version '" + out.format_version + "'");

  const Json& poset = field(doc, "poset", "");
  if (!poset.is_object()) schema("/poset", "expected an object");
  const Json& objs = field(poset, "objects", "/poset");
  if (!objs.is_array()) schema("/poset/objects", "expected an array");
  if (objs.empty()) throw Error(ErrorKind::EmptyPoset, "poset has no objects", "/poset/objects");
  std::vector<PosetObject> objects;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string at = "/poset/objects/" + std::to_string(i);
    if (!objs[i].is_object()) schema(at, "expected an object");
    const Json& id = field(objs[i], "id", at);
    if (!id.is_string()) schema(at + "/id", "expected a string");
    int degree = 0;
    if (objs[i].contains("degree"))
      degree = static_cast<int>(as_long(objs[i]["degree"], at + "/degree"));
    else if (!infer_degrees)
      schema(at, "missing field 'degree' (pass --infer-degrees to compute it)");
    objects.push_back({id.get<std::string>(), degree});
  }
  std::vector<IdPair> covers;
  const Json& cov = field(poset, "covers", "/poset");
  if (!cov.is_array()) schema("/poset/covers", "expected an array");
  for (std::size_t k = 0; k < cov.size(); ++k) {
    const std::string at = "/poset/covers/" + std::to_string(k);
    if (!cov[k].is_array() || cov[k].size() != 2 || !cov[k][0].is_string() || !cov[k][1].is_string())
      schema(at, "a cover is a pair of object ids");
    covers.emplace_back(cov[k][0].get<std::string>(), cov[k][1].get<std::string>());
  }
  Direction direction = Direction::Increasing;
  if (poset.contains("direction")) {
    const Json& d = poset["direction"];
    if (d == "increasing")
      direction = Direction::Increasing;
    else if (d == "decreasing")
      direction = Direction::Decreasing;
    else
      schema("/poset/direction", "direction must be \"increasing\" or \"decreasing\"");
  }

  GradedPoset p;
  try {
    if (infer_degrees) {
      std::vector<std::string> ids;
      for (const auto& o : objects) ids.push_back(o.id);
      p = infer_grading(ids, covers).redeclared(direction);
    } else {
      p = GradedPoset::validate(objects, covers, direction);
    }
  } catch (const Error& e) {
    invalid(locate(e, objects, covers), std::string(to_string(e.kind())) + ": " + e.what());
  }

  const Json& groups = field(doc, "groups", "");
  if (!groups.is_object()) schema("/groups", "expected an object keyed by object id");
  for (auto it = groups.begin(); it != groups.end(); ++it)
    if (!p.has(it.key())) invalid("/groups/" + escape(it.key()), "group given for unknown object '" + it.key() + "'");
  std::vector<FgAbGroup> gs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string at = "/groups/" + escape(p.id(i));
    auto it = groups.find(p.id(i));
    if (it == groups.end()) invalid("/groups", "MissingData: no group for object '" + p.id(i) + "'");
    if (!it->is_object()) schema(at, "expected an object");
    const long rank = as_long(field(*it, "rank", at), at + "/rank");
    if (rank < 0) schema(at + "/rank", "rank must be nonnegative");
    Matrix rel(static_cast<std::size_t>(rank), 0);
    if (it->contains("relations")) {
      rel = parse_matrix((*it)["relations"], at + "/relations");
      if (rel.rows() != static_cast<std::size_t>(rank))
        invalid(at + "/relations/rows", "relation matrix must have one row per generator");
    }
    gs.emplace_back(static_cast<std::size_t>(rank), std::move(rel));
  }

  const Json& maps = field(doc, "maps", "");
  if (!maps.is_object()) schema("/maps", "expected an object keyed by \"src->dst\"");
  std::map<CoverKey, AbHom> homs;
  for (auto it = maps.begin(); it != maps.end(); ++it) {
    const std::string at = "/maps/" + escape(it.key());
    const auto arrow = it.key().find("->");
    if (arrow == std::string::npos) schema(at, "map keys have the form \"src->dst\"");
    const std::string src = it.key().substr(0, arrow), dst = it.key().substr(arrow + 2);
    if (!p.has(src) || !p.has(dst)) invalid(at, "UnknownId: map between unknown objects");
    const std::size_t a = p.index(src), b = p.index(dst);
    if (!p.is_cover(a, b)) invalid(at, "map " + it.key() + " is not on a cover");
    const Matrix m = parse_matrix(*it, at);
    if (m.rows() != gs[b].ambient_rank() || m.cols() != gs[a].ambient_rank())
      invalid(at, "Mismatch: map " + it.key() + " must be " + std::to_string(gs[b].ambient_rank()) + "x" +
                      std::to_string(gs[a].ambient_rank()));
    try {
      homs.emplace(CoverKey{a, b}, AbHom(gs[a], gs[b], m));
    } catch (const Error& e) {
      invalid(at, std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  for (const auto& [a, b] : p.covers())
    if (!homs.contains({a, b}))
      invalid("/maps", "MissingData: no map for cover " + p.id(a) + "->" + p.id(b));
  try {
    out.diagram = Diagram::validate(p, std::move(gs), std::move(homs));
  } catch (const Error& e) {
    invalid("/maps", std::string(to_string(e.kind())) + ": " + e.what());
  }
  return out;
}

Json serialize(const Diagram& f) {
  const GradedPoset& p = f.poset();
  Json objects = Json::array();
  for (const auto& o : p.objects()) objects.push_back({{"id", o.id}, {"degree", o.degree}});
  Json covers = Json::array();
  for (const auto& [a, b] : p.covers()) covers.push_back({p.id(a), p.id(b)});
  Json groups = Json::object();
  for (std::size_t i = 0; i < f.size(); ++i)
    groups[p.id(i)] = {{"rank", f.group(i).ambient_rank()}, {"relations", matrix_json(f.group(i).relations())}};
  Json maps = Json::object();
  for (const auto& [a, b] : p.covers()) maps[p.id(a) + "->" + p.id(b)] = matrix_json(f.cover_map(a, b).matrix());
  return {{"format_version", kFormatVersion},
          {"poset", {{"objects", objects}, {"covers", covers}, {"direction", to_string(p.direction())}}},
          {"groups", groups},
          {"maps", maps}};
}

std::string serialize_text(const Diagram& f) { return serialize(f).dump(2) + "\n"; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

Json integer_json(const Integer& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str();
}

Json to_json(const GroupInvariants& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion) torsion.push_back(integer_json(t));
  return {{"text", to_string(g)}, {"free_rank", g.free_rank}, {"torsion", torsion}};
}

Json to_json(const Witness& w) {
  Json comps = Json::array();
  for (std::size_t k = 0; k < w.objects.size(); ++k) {
    Json v = Json::array();
    for (const auto& x : w.components[k]) v.push_back(integer_json(x));
    comps.push_back({{"object", w.objects[k]}, {"vector", v}});
  }
  return {{"components", comps}};
}

Json to_json(const Diagram& f, const PseudoCheck& c) {
  Json family = Json::array();
  for (std::size_t i : c.family) family.push_back(f.poset().id(i));
  Json j = {{"object", f.poset().id(c.object)}, {"d", c.d}, {"family", family}, {"holds", c.holds}};
  if (c.witness) j["witness"] = to_json(*c.witness);
  return j;
}

namespace {

Json verdict_json(const Diagram& f, const PseudoVerdict& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(to_json(f, c));
  Json j = {{"holds", v.holds}, {"checks", checks}};
  if (v.failure) j["first_failure"] = to_json(f, *v.failure);
  return j;
}

Json structure_json(const Diagram& f, const StructureVerdict& v) {
  Json j = {{"holds", v.holds}, {"reason", v.reason}};
  if (v.object) j["object"] = f.poset().id(*v.object);
  return j;
}

Json acyclic_json(const AcyclicityResult& a) {
  Json j = {{"holds", a.acyclic}};
  if (a.degree) {
    j["degree"] = *a.degree;
    j["group"] = to_json(a.group);
  }
  return j;
}

}  // namespace

Json to_json(const Diagram& f, const ClassificationReport& r) {
  Json objects = Json::array();
  for (const auto& o : r.objects)
    objects.push_back({{"id", o.id},
                       {"degree", o.degree},
                       {"group", to_json(o.group)},
                       {"image", to_json(o.image)},
                       {"cokernel", to_json(o.cokernel)},
                       {"kernel", to_json(o.kernel)},
                       {"coimage", to_json(o.coimage)}});
  return {{"objects", objects},
          {"pseudo_projective", verdict_json(f, r.pseudo_projective)},
          {"pseudo_injective", verdict_json(f, r.pseudo_injective)},
          {"projective", structure_json(f, r.projective)},
          {"injective", structure_json(f, r.injective)},
          {"colim_acyclic", acyclic_json(r.colim)},
          {"lim_acyclic", acyclic_json(r.lim)},
          {"consistency",
           {{"structure", r.structure_consistent},
            {"pseudo_projective_implies_colim_acyclic", !r.oracle.pseudo_projective || r.oracle.colim_acyclic},
            {"pseudo_injective_implies_lim_acyclic", !r.oracle.pseudo_injective || r.oracle.lim_acyclic}}}};
}

Json to_json(const SSPage& page) {
  Json entries = Json::array();
  for (const auto& e : page.entries)
    entries.push_back({{"p", e.p}, {"q", e.q}, {"n", e.n}, {"group", to_json(e.group.invariants())}});
  Json diffs = Json::array();
  for (const auto& d : page.differentials)
    diffs.push_back({{"from", {d.from.first, d.from.second}},
                     {"to", {d.to.first, d.to.second}},
                     {"zero", d.map.is_zero()}});
  return {{"r", page.r}, {"type", to_string(page.type)}, {"entries", entries}, {"differentials", diffs}};
}

Json to_json(const ConvergenceReport& r) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"n", d.n},
                       {"e_infinity_rank", d.e_infinity_rank},
                       {"target", to_json(d.target)},
                       {"orders_checked", d.orders_checked}});
  return {{"variant", r.variant}, {"stable_page", r.stable_page}, {"degrees", degrees}};
}

Json derived_json(const std::vector<GroupInvariants>& table) {
  Json out = Json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    Json g = to_json(table[i]);
    g["degree"] = i;
    out.push_back(std::move(g));
  }
  return out;
}

Json error_json(const Error& e) {
  Json j = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (!e.pointer().empty()) j["pointer"] = e.pointer();
  return j;
}

Json make_report(const std::string& command, const std::string& digest, std::optional<std::uint64_t> seed) {
  Json j = {{"tool", {{"name", "posetab"}, {"version", kToolVersion}}}, {"command", command}};
  j["input"] = {{"sha256", digest}};
  if (seed) j["seed"] = *seed;
  return j;
}

std::string render_text(const Diagram& f, const ClassificationReport& r) {
  std::ostringstream os;
  std::size_t width = 2;
  for (const auto& o : r.objects) width = std::max(width, o.id.size());
  os << "objects:\n";
  for (const auto& o : r.objects)
    os << "  " << std::left << std::setw(static_cast<int>(width)) << o.id << "  deg " << std::setw(3) << o.degree
       << " F = " << to_string(o.group) << ", coker = " << to_string(o.cokernel)
       << ", ker = " << to_string(o.kernel) << "\n";
  auto yes = [](bool b) { return b ? "true" : "false"; };
  os << "pseudo-projective: " << yes(r.pseudo_projective.holds);
  if (r.pseudo_projective.failure) {
    const auto& c = *r.pseudo_projective.failure;
    os << " (fails at " << f.poset().id(c.object) << ", d = " << c.d << ")";
  }
  os << "\nprojective: " << yes(r.projective.holds);
  if (!r.projective.holds) os << " (" << r.projective.reason << ")";
  os << "\npseudo-injective: " << yes(r.pseudo_injective.holds);
  if (r.pseudo_injective.failure) {
    const auto& c = *r.pseudo_injective.failure;
    os << " (fails at " << f.poset().id(c.object) << ", d = " << c.d << ")";
  }
  os << "\ninjective: " << yes(r.injective.holds);
  if (!r.injective.holds) os << " (" << r.injective.reason << ")";
  os << "\ncolim-acyclic: " << yes(r.colim.acyclic);
  if (r.colim.degree) os << " (colim_" << *r.colim.degree << " = " << to_string(r.colim.group) << ")";
  os << "\nlim-acyclic: " << yes(r.lim.acyclic);
  if (r.lim.degree) os << " (lim^" << *r.lim.degree << " = " << to_string(r.lim.group) << ")";
  os << "\n";
  return os.str();
}

std::string render_grid(const SSPage& page) {
  if (page.entries.empty()) return "(empty page)\n";
  int pmin = page.entries.front().p, pmax = pmin, qmin = page.entries.front().q, qmax = qmin;
  for (const auto& e : page.entries) {
    pmin = std::min(pmin, e.p);
    pmax = std::max(pmax, e.p);
    qmin = std::min(qmin, e.q);
    qmax = std::max(qmax, e.q);
  }
  std::map<std::pair<int, int>, std::string> cell;
  std::size_t width = 1;
  for (const auto& e : page.entries) {
    const std::string s = to_string(e.group.invariants());
    width = std::max(width, s.size());
    cell[{e.p, e.q}] = s;
  }
  std::ostringstream os;
  os << "E_" << page.r << " (" << to_string(page.type) << ")\n";
  for (int q = qmax; q >= qmin; --q) {
    os << "q=" << std::setw(3) << q << " |";
    for (int p = pmin; p <= pmax; ++p) {
      auto it = cell.find({p, q});
      os << ' ' << std::setw(static_cast<int>(width)) << (it == cell.end() ? "." : it->second);
    }
    os << "\n";
  }
  os << "      +";
  for (int p = pmin; p <= pmax; ++p) os << ' ' << std::setw(static_cast<int>(width)) << ("p=" + std::to_string(p));
  os << "\n";
  return os.str();
}

}  // namespace posetab
