#pragma once

#include <json.hpp>

#include "polycoho/cohomology.hpp"

namespace polycoho {

/// {"n": int, "field": "Q" | "Fq:<q>", "entries": [[string]]}, 3 rows of 2n+1
/// strings; rationals as "num/den".
nlohmann::json parameters_to_json(const ParameterMatrix& m);
ParameterMatrix parameters_from_json(const nlohmann::json& j);

/// {"a,b": "num/den", ...} over all faces.
nlohmann::json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(PolygonRank rank, Field field, const nlohmann::json& j);

nlohmann::json rank_table_to_json(const RankTable& t);
RankTable rank_table_from_json(const nlohmann::json& j);

}  // namespace polycoho
