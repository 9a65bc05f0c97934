#pragma once

#include <json.hpp>

#include "htau/series.hpp"

namespace htau {

// Canonical interchange form:
//   {"family":"q","W":6,"terms":[{"mono":[[1,2]],"coef":[[0,"3/2"]]}, ...]}
// Terms appear in canonical monomial order. Two optional keys carry the
// u-precision: "ucap" (per-weight list, present only when some weight is not
// exact in u; null entries mean exact) and "band" ([umin, umax], written only
// when it differs from the default for W).
nlohmann::json to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UPoly& p);
UPoly upoly_from_json(const nlohmann::json& j);

} // namespace htau
