#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "posetab/classify.hpp"
#include "posetab/diagram.hpp"
#include "posetab/error.hpp"
#include "posetab/spectral.hpp"

namespace posetab {

inline constexpr std::string_view kToolVersion = "0.3.0";
inline constexpr std::string_view kFormatVersion = "1.0";

using Json = nlohmann::json;

struct ParsedDocument {
  std::string format_version;
  Diagram diagram;
  const GradedPoset& poset() const { return diagram.poset(); }
};

/// Throws SchemaError for malformed documents and ValidationError (with a
/// JSON pointer) when the content does not describe a graded poset and a
/// functor on it; an empty object list is an EmptyPosetError.
ParsedDocument parse_document(std::string_view text, bool infer_degrees = false);
ParsedDocument parse_document_json(const Json& doc, bool infer_degrees = false);

Json serialize(const Diagram& f);
std::string serialize_text(const Diagram& f);

std::string sha256_hex(std::string_view bytes);

/// Integers that fit in 64 bits become JSON numbers, others decimal strings.
Json integer_json(const Integer& v);
Json to_json(const GroupInvariants& g);
Json to_json(const Witness& w);
Json to_json(const Diagram& f, const PseudoCheck& c);
Json to_json(const Diagram& f, const ClassificationReport& r);
Json to_json(const SSPage& page);
Json to_json(const ConvergenceReport& r);
Json derived_json(const std::vector<GroupInvariants>& table);
Json error_json(const Error& e);

/// Common envelope of every report: tool, command, input digest, seed.
Json make_report(const std::string& command, const std::string& digest, std::optional<std::uint64_t> seed = {});

std::string render_text(const Diagram& f, const ClassificationReport& r);
/// Aligned grid with q descending in rows and p ascending in columns.
std::string render_grid(const SSPage& page);

}  // namespace posetab
