#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "feynrules/associativity.hpp"
#include "feynrules/born.hpp"
#include "feynrules/reciprocity.hpp"
#include "feynrules/regrading.hpp"
#include "feynrules/sequence.hpp"

namespace feynrules::io {

using Json = nlohmann::ordered_json;

Json to_json(const Pair& p);
Json to_json(const GammaVector& g);
Json to_json(const Regrading& m);
Json to_json(const Classification& c);
Json to_json(const ReductionResult& r);
Json to_json(const HFunction& h);
Json to_json(const ReciprocityOp& r);
Json to_json(const ReciprocitySolutions& s);
Json to_json(const Exponent& e);
Json to_json(const Verdict& v);
Json to_json(const DerivationReport& r);
Json to_json(const NormalizationReport& r);
Json to_json(const SymmetryReport& r);

// Parsers throw SchemaError with a path to the offending element.
GammaVector gamma_from_json(const Json& j);
std::pair<Setup, AmplitudeAssignment> setup_from_json(const Json& j);
std::vector<Sequence> sequences_from_json(const Json& j, const std::string& default_setup);

Json parse_file(const std::string& path);  // SchemaError on I/O or syntax errors

}  // namespace feynrules::io
