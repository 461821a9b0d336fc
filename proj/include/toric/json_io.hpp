#pragma once

// JSON schemas for fans, pairs, groups, step lists and McKay reports.
// Integers are JSON numbers below 2^53 in magnitude and decimal strings
// otherwise; rationals are strings "p/q" in lowest terms.

#include <string>
#include <vector>

#include "json.hpp"

#include "toric/mckay.hpp"
#include "toric/mmp.hpp"
#include "toric/pair.hpp"

namespace toric {

using Json = nlohmann::json;

Json int_to_json(const Int& x);
Int int_from_json(const Json& j);
Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j);

Json fan_to_json(const Fan& fan);
Fan fan_from_json(const Json& j);

/// A fan plus "coeffs" (default all zero) and an optional "lattice"
/// {"denominator", "basis"} for overlattices of Z^n.
Json pair_to_json(const ToricPair& pair);
ToricPair pair_from_json(const Json& j);

Json group_to_json(const GroupData& g);
GroupData group_from_json(const Json& j);

Json heights_to_json(const HeightFunction& h);
HeightFunction heights_from_json(const Json& j);

Json to_json(const FlopStep& s);
Json to_json(const MmpStep& s);
Json to_json(const ExtractionStep& s);
Json to_json(const LedgerEntry& e);
Json to_json(const McKayReport& r);

std::vector<FlopStep> flop_steps_from_json(const Json& j);
std::vector<MmpStep> mmp_steps_from_json(const Json& j);
std::vector<ExtractionStep> extraction_steps_from_json(const Json& j);

/// Parse text; schema and syntax problems raise InputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace toric
