#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "garfield/config.hpp"
#include "garfield/error.hpp"
#include "garfield/pipeline.hpp"

namespace {

const std::map<std::string, std::string>& option_help() {
    static const std::map<std::string, std::string> help{
        {"journals", "journal records, JSON lines"},
        {"documents", "document records, JSON lines"},
        {"out", "output directory (default out)"},
        {"links", "resolved-links CSV to reuse instead of resolving"},
        {"census-year", "census year (default: latest document year)"},
        {"window", "window length in years (default 2)"},
        {"numerator", "comma list of mm, am, oneone (default all three)"},
        {"denominator", "comma list of citable, all (default citable)"},
        {"self-cites", "comma list of include, exclude (default include)"},
        {"suspension", "omit-cites, include-docs or none (default omit-cites)"},
        {"merge-renames", "treat ISSN-linked journals as one (default true)"},
        {"seed", "bootstrap seed; enables confidence intervals"},
        {"replicates", "bootstrap replicates (default 1000)"},
        {"level", "confidence level (default 0.95)"},
        {"rounding", "3dp, 1dp or error-aware (default 3dp)"},
        {"threads", "worker threads, 0 for all cores (default 1)"},
        {"title-edit-distance", "maximum title edit distance (default 2)"},
        {"truncation-length", "title truncation length (default 20)"},
        {"count-incomplete", "count IncompleteCorrect links as verified (default true)"},
        {"doi-overrides", "let a DOI match decide the target (default true)"},
        {"self-citation-threshold", "flag self-citation rates above this (default 0.20)"},
        {"editorial-threshold", "flag editorial numerator shares above this (default 0.25)"},
        {"error-rate-threshold", "flag citing error rates at or above this (default 0.25)"},
        {"test-denylist", "comma list of test-record titles (default TEST)"},
        {"coverage-target", "accrual share the suggested window covers (default 0.5)"},
    };
    return help;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Journal citation index toolkit"};
    app.require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::string config_path;
    bool strict = false;
    app.add_option("--config", config_path, "flat key = value config file (default $GARFIELD_CONFIG)");
    for (const auto& [key, text] : option_help()) {
        app.add_option("--" + key, flags[key], text);
    }
    app.add_flag("--strict", strict, "exit 3 when an audit threshold is breached");

    const std::map<std::string, std::string> stages{
        {"validate", "ingest and check the corpus"},
        {"resolve", "link references to documents"},
        {"compute", "index values per journal and variant"},
        {"stats", "citation distributions and accrual curves"},
        {"audit", "manipulation and data-quality flags"},
        {"report", "every stage and every report"},
    };
    for (const auto& [name, text] : stages) {
        app.add_subcommand(name, text)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return garfield::exit_code::config_error;
    }

    try {
        garfield::Settings settings;
        if (config_path.empty()) {
            if (const char* env = std::getenv("GARFIELD_CONFIG"); env && *env) {
                config_path = env;
            }
        }
        if (!config_path.empty()) {
            settings = garfield::read_config_file(config_path);
        }
        for (const auto& [key, value] : flags) {
            if (app.count("--" + key) > 0) {
                settings[key] = value;
            }
        }
        if (strict) {
            settings["strict"] = "true";
        }
        auto cfg = garfield::build_run_config(settings);
        auto stage = garfield::parse_stage(app.get_subcommands().front()->get_name());
        return garfield::run_pipeline(cfg, *stage, std::cout, std::cerr);
    } catch (const garfield::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return garfield::exit_code::config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return garfield::exit_code::ingest_failure;
    }
}
