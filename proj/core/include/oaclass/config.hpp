#pragma once

#include <map>
#include <string>

#include "oaclass/classifier.hpp"
#include "oaclass/delayed.hpp"
#include "oaclass/harvest.hpp"

namespace oaclass {

// Flat key=value configuration file: '#' comments, blank lines and [section]
// headers ignored, list values ';'-separated. Unknown keys are errors.
//
// Keys:
//   immediate_grace_days        integer >= 0
//   open_license_patterns       list of URL patterns ('*' wildcard)
//   unlawful_host_denylist      list of host prefixes
//   precedence                  list of all 13 class codes
//   delayed_horizon_months      integer > 0
//   delayed_recent_months       integer > 0
//   delayed_theta_old           share in [0,1]
//   delayed_theta_recent        share in [0,1]
//   delayed_min_cohort          integer >= 1
//   rate_limit_rps              requests per second > 0
//   max_retries                 integer >= 0
//   backoff_base_ms             integer >= 0
struct ToolConfig {
    ClassifierConfig classifier;
    CohortConfig cohort;
    Politeness politeness;
};

std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies the file onto defaults; throws ConfigError on unknown keys or bad
// values.
ToolConfig load_tool_config(const std::string& path);
ToolConfig tool_config_from_pairs(const std::map<std::string, std::string>& pairs);

} // namespace oaclass
