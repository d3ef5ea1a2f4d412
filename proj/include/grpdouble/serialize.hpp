#pragma once

#include <json.hpp>

#include "grpdouble/almost_periodic.hpp"
#include "grpdouble/convolution.hpp"
#include "grpdouble/set_algebra.hpp"
#include "grpdouble/structure.hpp"

namespace grpdouble {

// Reports use insertion-ordered objects so dumps have a stable key order.
// Rationals are strings ("3/2", "-1", "0"); sets are ascending index arrays.
using Json = nlohmann::ordered_json;

Json to_json(const Subset& s);
Json to_json(const GroupFunction& f);
Json to_json(const DoublingReport& r);
Json to_json(const FreimanResult& r);
Json to_json(const JumpReport& r);
Json to_json(const CoverEntry& e);
Json to_json(const CoveringFrontier& f);
Json to_json(const WitnessReport& r);
Json to_json(const CoveringBoundReport& r);
Json to_json(const IndicatorIdentityReport& r);
Json to_json(const NormReport& r);
Json to_json(const CSWitness& w);
Json to_json(const ContinuityWitness& w);
Json to_json(const PipelineReport& r);

// Canonical text form: two-space indent plus a trailing newline.
std::string dump(const Json& j);

}  // namespace grpdouble
