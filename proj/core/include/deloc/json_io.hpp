#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "deloc/delocalization.hpp"
#include "deloc/graph.hpp"
#include "deloc/kernel.hpp"
#include "deloc/sphere_ops.hpp"
#include "deloc/tree_harmonics.hpp"

namespace deloc {

// All artifacts carry {"schema": 1}; nlohmann::json objects are key-sorted
// maps and the number serializer is shortest-round-trip, so equal reports
// dump to identical bytes.
inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const GirthReport& report);
nlohmann::json to_json(const ConditionFit& fit);
nlohmann::json to_json(const KernelRecipe& recipe);
nlohmann::json to_json(const RadialKernel& kernel);
RadialKernel radial_kernel_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SurveyRow& row);
nlohmann::json to_json(const DelocalizationReport& report);

// CSV companion of the survey report, one row per eigenfunction:
// j,lambda,tempered,mass_target,E_min,delta,bound,lhs5,rhs5,lhs8,pass
std::string report_csv(const DelocalizationReport& report);

std::string dump_json(const nlohmann::json& j);  // pretty, trailing newline
void write_text_file(const std::string& path, const std::string& text);

}  // namespace deloc
