#pragma once

#include <string>

#include <json.hpp>

#include "swf/axioms.hpp"
#include "swf/doubleslice.hpp"
#include "swf/domain.hpp"
#include "swf/families.hpp"
#include "swf/search.hpp"
#include "swf/slice.hpp"

namespace swf::io {

using nlohmann::json;
using nlohmann::ordered_json;

// Set-function file: {"n": ..., "values": "<2^n chars of W|T|L, index = mask>"}.
// Constructions also record the family they came from: "family", "k", "base".
ordered_json setfunction_to_json(const SetFunctionWTL& g);
ordered_json setfunction_to_json(const NonBordaConstruction& c);
SetFunctionWTL setfunction_from_json(const json& j);

// Group file: {"n": ..., "generators": [[sigma(1)..sigma(n)], ...]}.
ordered_json group_to_json(const PermutationGroup& g);
PermutationGroup group_from_json(const json& j);

ordered_json surd_to_json(const SurdEigen& e);  // {"s","t","u"} for (s ± t*sqrt(u))/4

ordered_json search_report_to_json(const SearchReport& rep);
SearchReport search_report_from_json(const json& j);  // enough state to merge shards

std::string rel_string(const SetFunctionWTL& g);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace swf::io
