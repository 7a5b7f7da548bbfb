#include "oaclass/config.hpp"

#include <fstream>

#include "oaclass/errors.hpp"
#include "oaclass/text.hpp"

namespace oaclass {

namespace {

std::vector<std::string> split_semicolons(const std::string& value) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto sep = value.find(';', start);
        const auto end = sep == std::string::npos ? value.size() : sep;
        const auto piece = trim_view(std::string_view(value).substr(start, end - start));
        if (!piece.empty())
            parts.emplace_back(piece);
        if (sep == std::string::npos)
            break;
        start = sep + 1;
    }
    return parts;
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs a number, got '" + value + "'");
    }
}

} // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file: " + path);

    std::map<std::string, std::string> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        const auto stripped = trim_view(line);
        if (stripped.empty())
            continue;
        if (stripped.front() == '[' && stripped.back() == ']')
            continue; // section headers are cosmetic
        const auto eq = stripped.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not 'key = value': '" + std::string(stripped) + "'");
        const std::string key(trim_view(stripped.substr(0, eq)));
        const std::string value(trim_view(stripped.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
        if (pairs.contains(key))
            throw ConfigError("config key '" + key + "' appears twice");
        pairs[key] = value;
    }
    return pairs;
}

ToolConfig tool_config_from_pairs(const std::map<std::string, std::string>& pairs) {
    ToolConfig config;
    for (const auto& [key, value] : pairs) {
        if (key == "immediate_grace_days") {
            config.classifier.immediate_grace_days = parse_int(key, value);
        } else if (key == "open_license_patterns") {
            config.classifier.open_license_patterns = split_semicolons(value);
        } else if (key == "unlawful_host_denylist") {
            config.classifier.unlawful_host_denylist = split_semicolons(value);
        } else if (key == "precedence") {
            std::vector<OAClass> precedence;
            for (const auto& code : split_semicolons(value)) {
                const auto cls = OAClass::from_code(code);
                if (!cls)
                    throw ConfigError("unknown class code in precedence: '" + code + "'");
                precedence.push_back(*cls);
            }
            config.classifier.precedence = std::move(precedence);
        } else if (key == "delayed_horizon_months") {
            config.cohort.horizon_months = parse_int(key, value);
        } else if (key == "delayed_recent_months") {
            config.cohort.recent_months = parse_int(key, value);
        } else if (key == "delayed_theta_old") {
            config.cohort.theta_old = parse_double(key, value);
        } else if (key == "delayed_theta_recent") {
            config.cohort.theta_recent = parse_double(key, value);
        } else if (key == "delayed_min_cohort") {
            const int n = parse_int(key, value);
            if (n < 1)
                throw ConfigError("delayed_min_cohort must be >= 1");
            config.cohort.min_cohort = static_cast<std::size_t>(n);
        } else if (key == "rate_limit_rps") {
            config.politeness.max_requests_per_second = parse_double(key, value);
            if (config.politeness.max_requests_per_second <= 0)
                throw ConfigError("rate_limit_rps must be > 0");
        } else if (key == "max_retries") {
            config.politeness.max_retries = parse_int(key, value);
            if (config.politeness.max_retries < 0)
                throw ConfigError("max_retries must be >= 0");
        } else if (key == "backoff_base_ms") {
            config.politeness.backoff_base_ms = parse_int(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    config.classifier.validate();
    if (config.cohort.horizon_months <= 0 || config.cohort.recent_months <= 0)
        throw ConfigError("delayed window lengths must be > 0");
    if (config.cohort.theta_old < 0 || config.cohort.theta_old > 1 ||
        config.cohort.theta_recent < 0 || config.cohort.theta_recent > 1)
        throw ConfigError("delayed thresholds must lie in [0,1]");
    return config;
}

ToolConfig load_tool_config(const std::string& path) {
    return tool_config_from_pairs(parse_config_file(path));
}

} // namespace oaclass
