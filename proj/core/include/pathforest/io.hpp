#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "pathforest/embedding.hpp"
#include "pathforest/integrate.hpp"
#include "pathforest/merge_tree.hpp"
#include "pathforest/path.hpp"
#include "pathforest/trim.hpp"
#include "pathforest/variation.hpp"

namespace pathforest {

// CSV formats: `t,value` for continuous paths, `t,left,right` for cadlag
// ones; UTF-8, '.' decimal separator, rows sorted by t. Writers emit
// max-precision doubles so a parse/print round trip is lossless.

SampledPath read_path_csv(std::istream& in);
CadlagPath read_cadlag_csv(std::istream& in);
std::variant<SampledPath, CadlagPath> read_any_csv(std::istream& in);

void write_path_csv(std::ostream& out, const SampledPath& path);
void write_cadlag_csv(std::ostream& out, const CadlagPath& path);
void write_profile_csv(std::ostream& out, const TrimProfile& profile);

// JSON reports, schema version 1.
std::string tree_json(const MergeTree& tree);
std::string trim_events_json(const TrimEvents& events);
std::string variation_json(const VariationReport& report);
std::string dimension_json(const ScalingFit& fit);
std::string hurst_json(const HurstRatioFit& ratio_fit, double drawdown_stat,
                       double drawdown_scale);
std::string integral_json(const IntegralReport& report);
std::string error_json(const std::string& code, const std::string& message);

}  // namespace pathforest
