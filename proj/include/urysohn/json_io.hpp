#pragma once

#include <string>

#include <json.hpp>

#include "urysohn/coding.hpp"
#include "urysohn/equiv.hpp"
#include "urysohn/limit_builder.hpp"
#include "urysohn/ramsey.hpp"

namespace urysohn {

using Json = nlohmann::ordered_json;

// Numbers travel as strings in the exact text grammar. Every *_from_json
// throws ParseError on malformed input.

Json to_json(const ExactReal& x);
ExactReal exact_from_json(const Json& j);

Json to_json(const DistanceSet& d);
DistanceSet distance_set_from_json(const Json& j);

Json to_json(const Space& x);
Space space_from_json(const Json& j);

Json to_json(const DvsCode& c);
DvsCode code_from_json(const Json& j);

/// Pairs as [source label, target label].
Json to_json(const PartialIsometry& p, const Space& x);
/// Accepts labels or indices.
PartialIsometry isometry_from_json(const Json& j, const Space& x);

Json to_json(const RatMatrix& m);
Json to_json(const ExtensionReport& r, const Space& x);
Json to_json(const ArrowVerdict& v, const Space& c);
Json to_json(const std::vector<ClauseResult>& clauses);
Json to_json(const EncodedModel& m);
EncodedModel model_from_json(const Json& j);

/// Reads a file, or standard input for "-".
Json load_json(const std::string& path);
/// Compact single-line dump.
std::string dump(const Json& j);

}  // namespace urysohn
