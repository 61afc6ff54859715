#ifndef GARFIELD_CONFIG_HPP
#define GARFIELD_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "garfield/audit.hpp"
#include "garfield/indices.hpp"
#include "garfield/resolver.hpp"

namespace garfield {

/// Raw settings keyed by option name (the long flag without its dashes).
using Settings = std::map<std::string, std::string>;

/// Every recognised key, ascending.
const std::vector<std::string>& config_keys();

/// Parses a flat `key = value` file. Blank lines and lines starting with '#'
/// are skipped. Throws ConfigError on a line without '=', an unknown key or
/// a repeated key.
Settings parse_config_text(std::string_view text, std::string_view origin = "config");
Settings read_config_file(const std::filesystem::path& path);

struct RunConfig {
    std::filesystem::path journals;
    std::filesystem::path documents;
    std::filesystem::path out = "out";
    std::optional<std::filesystem::path> links;  // reuse a resolved-links CSV

    ResolutionConfig resolution;
    /// Cartesian product of the numerator, denominator and self-cite lists.
    /// census_year is 0 until the pipeline fills it from the corpus.
    std::vector<IndexVariantSpec> variants;
    std::optional<int> census_year;
    std::optional<BootstrapConfig> bootstrap;  // enabled iff a seed is given
    RoundingPolicy rounding = RoundingPolicy::ThreeDecimal;
    AuditThresholds thresholds;
    double coverage_target = 0.5;
    bool strict = false;
    unsigned threads = 1;  // 0: hardware concurrency
};

/// Builds and checks a run configuration. Throws ConfigError on a bad value,
/// on bootstrap settings without a seed, and when no variant results.
RunConfig build_run_config(const Settings& settings);

}  // namespace garfield

#endif  // GARFIELD_CONFIG_HPP
