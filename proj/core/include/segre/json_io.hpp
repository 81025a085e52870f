#ifndef SEGRE_JSON_IO_HPP
#define SEGRE_JSON_IO_HPP

#include <json.hpp>

#include "segre/kingcheck.hpp"

namespace segre {

using Json = nlohmann::ordered_json;

Json segre_report_json(const SegreReport& R, const std::vector<std::string>& vars);
Json lelong_estimate_json(const LelongEstimate& L);
Json vogel_stats_json(const VogelStats& S);
Json king_report_json(const KingReport& R);
Json newton_polyhedron_json(const NewtonPolyhedron& NP);

// minimal structural validator: type / required / properties / items / enum
bool validate_schema(const Json& value, const Json& schema, std::string* why = nullptr);

}  // namespace segre

#endif
