#pragma once

#include <string>

#include "json.hpp"

#include "causalq/equivalence.hpp"
#include "causalq/relations.hpp"
#include "causalq/sufficiency.hpp"

namespace causalq {

using Json = nlohmann::json;

/// {"A": 1, "S": "red"}; keys come out sorted.
Json to_json(const Signature& sig, const Assignment& a);
Json to_json(const Signature& sig, const ContrastPair& c);
Json to_json(const Signature& sig, const Network& n);

/// Schema: kind, base, extension, verdict, witness (object or null),
/// counterexample (object or null), trace (array).
Json to_json(const ModelPair& pair, const EquivReport& report);
std::string to_text(const ModelPair& pair, const EquivReport& report);

std::string describe(const Signature& sig, const Counterexample& c, const std::string& base,
                     const std::string& extension);

}  // namespace causalq
