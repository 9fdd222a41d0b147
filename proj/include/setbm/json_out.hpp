#pragma once

#include <string>

#include <json.hpp>

#include "setbm/convex_set.hpp"
#include "setbm/embedding.hpp"
#include "setbm/gh_difference.hpp"
#include "setbm/stats.hpp"

namespace setbm {

inline constexpr const char* kSchemaVersion = "1";

// 17-significant-digit decimal rendering, locale independent; used for all
// CSV output so reruns are byte-identical.
std::string format_double(double v);

nlohmann::ordered_json set_to_json(const ConvexSet& a);
nlohmann::ordered_json embedded_to_json(const EmbeddedElement& u);
nlohmann::ordered_json report_to_json(const std::string& test, const MomentReport& r,
                                      double sigma_gate);
nlohmann::ordered_json gh_result_to_json(const GhResult& r, bool include_witness);

}  // namespace setbm
