#ifndef GARFIELD_PIPELINE_HPP
#define GARFIELD_PIPELINE_HPP

#include <iosfwd>
#include <optional>
#include <string_view>

#include "garfield/config.hpp"

namespace garfield {

enum class Stage { Validate, Resolve, Compute, Stats, Audit, Report };
std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

namespace exit_code {
constexpr int ok = 0;
constexpr int config_error = 1;
constexpr int ingest_failure = 2;
constexpr int audit_breach = 3;
}  // namespace exit_code

/// Runs `stage` (and what it depends on) and writes its reports under
/// cfg.out. Each stage re-reads the inputs, so stages can run on their own;
/// compute, stats and audit take resolved links from cfg.links when set.
/// Prints a summary table to `summary` and diagnostics to `diag`. Returns
/// one of the exit codes above. Outputs depend only on the inputs and the
/// configuration, never on cfg.threads.
int run_pipeline(const RunConfig& cfg, Stage stage, std::ostream& summary, std::ostream& diag);

}  // namespace garfield

#endif  // GARFIELD_PIPELINE_HPP
