#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nilvf/classifier.hpp"
#include "nilvf/error.hpp"

namespace nilvf {

using Json = nlohmann::ordered_json;

/// Process exit status for an error class. Parse 2, NotClosed 3,
/// NotNilpotent 4, RankTooHigh 5, NonRationalConstants 6, anything else 1.
int exit_code(ErrorCode code);

struct Report {
  int exit_code = 0;
  Json json;
};

/// {"input": [...], "rank": .., "nilpotent": .., "class": .., "center_dim": ..,
///  "normal_form": {...}, "embedding": [...], "verified": {...}}
/// `inputs` are the fields as given; each is echoed canonically and mapped to
/// its image in u_k. Without them the report's K-basis is used.
Json report_json(const NormalFormReport& report, const std::vector<Derivation>& inputs = {});

/// {"error": {"code": .., "message": .., "line"?: .., "column"?: ..}}
Json error_json(const Error& error);

/// Parses the fields over nvars variables and runs the full classification.
/// Never throws on classifier errors; they become an error report.
Report run_classify(const std::vector<std::string>& fields, std::size_t nvars);

/// Canonical serialization: two-space indent, trailing newline.
std::string dump(const Json& json);

}  // namespace nilvf
