#include "garfield/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "garfield/error.hpp"
#include "garfield/text.hpp"

namespace garfield {

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k{
            "census-year",        "count-incomplete", "coverage-target", "denominator",
            "documents",          "doi-overrides",    "editorial-threshold", "error-rate-threshold",
            "journals",           "level",            "links",           "merge-renames",
            "numerator",          "out",              "replicates",      "rounding",
            "seed",               "self-citation-threshold", "self-cites", "strict",
            "suspension",         "test-denylist",    "threads",         "title-edit-distance",
            "truncation-length",  "window",
        };
        std::sort(k.begin(), k.end());
        return k;
    }();
    return keys;
}

Settings parse_config_text(std::string_view text, std::string_view origin) {
    Settings out;
    const auto& keys = config_keys();
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        auto where = std::string(origin) + ":" + std::to_string(line_no);
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key = value");
        }
        auto key = trim(std::string_view(t).substr(0, eq));
        auto value = trim(std::string_view(t).substr(eq + 1));
        if (!std::binary_search(keys.begin(), keys.end(), key)) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
        if (!out.emplace(key, value).second) {
            throw ConfigError(where + ": key '" + key + "' given twice");
        }
    }
    return out;
}

Settings read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto item = trim(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

class Reader {
public:
    explicit Reader(const Settings& s) : s_(s) {}

    const std::string* get(const std::string& key) const {
        auto it = s_.find(key);
        return it == s_.end() ? nullptr : &it->second;
    }

    template <typename T>
    std::optional<T> number(const std::string& key) const {
        const auto* v = get(key);
        if (!v) {
            return std::nullopt;
        }
        T out{};
        auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
        if (v->empty() || ec != std::errc{} || ptr != v->data() + v->size()) {
            throw ConfigError(key + ": not a number: '" + *v + "'");
        }
        return out;
    }

    std::optional<bool> boolean(const std::string& key) const {
        const auto* v = get(key);
        if (!v) {
            return std::nullopt;
        }
        if (*v == "true" || *v == "1" || *v == "yes" || v->empty()) {
            return true;
        }
        if (*v == "false" || *v == "0" || *v == "no") {
            return false;
        }
        throw ConfigError(key + ": expected true or false, got '" + *v + "'");
    }

    template <typename E>
    std::vector<E> choices(const std::string& key, const std::vector<std::pair<std::string, E>>& table,
                           const std::string& fallback) const {
        const auto* v = get(key);
        std::vector<E> out;
        for (const auto& item : split_list(v ? *v : fallback)) {
            auto it = std::find_if(table.begin(), table.end(), [&](const auto& p) { return p.first == item; });
            if (it == table.end()) {
                std::string allowed;
                for (const auto& p : table) {
                    allowed += (allowed.empty() ? "" : ", ") + p.first;
                }
                throw ConfigError(key + ": unknown value '" + item + "' (expected " + allowed + ")");
            }
            if (std::find(out.begin(), out.end(), it->second) == out.end()) {
                out.push_back(it->second);
            }
        }
        if (out.empty()) {
            throw ConfigError(key + ": no value given");
        }
        return out;
    }

    template <typename E>
    E choice(const std::string& key, const std::vector<std::pair<std::string, E>>& table,
             const std::string& fallback) const {
        auto all = choices(key, table, fallback);
        if (all.size() != 1) {
            throw ConfigError(key + ": expected a single value");
        }
        return all.front();
    }

private:
    const Settings& s_;
};

}  // namespace

RunConfig build_run_config(const Settings& settings) {
    Reader r(settings);
    RunConfig cfg;

    if (const auto* v = r.get("journals")) cfg.journals = *v;
    if (const auto* v = r.get("documents")) cfg.documents = *v;
    if (const auto* v = r.get("out")) cfg.out = *v;
    if (const auto* v = r.get("links"); v && !v->empty()) cfg.links = *v;
    if (cfg.journals.empty() || cfg.documents.empty()) {
        throw ConfigError("journals and documents paths are required");
    }

    if (auto v = r.number<long long>("title-edit-distance")) {
        if (*v < 0) throw ConfigError("title-edit-distance must be >= 0");
        cfg.resolution.title_edit_distance_max = static_cast<std::size_t>(*v);
    }
    if (auto v = r.number<long long>("truncation-length")) {
        if (*v < 1) throw ConfigError("truncation-length must be >= 1");
        cfg.resolution.truncation_length = static_cast<std::size_t>(*v);
    }
    if (auto v = r.boolean("count-incomplete")) cfg.resolution.count_incomplete_in_G11 = *v;
    if (auto v = r.boolean("doi-overrides")) cfg.resolution.doi_overrides_fields = *v;

    cfg.census_year = r.number<int>("census-year");
    int window = r.number<int>("window").value_or(2);
    if (window < 1) {
        throw ConfigError("window must be >= 1");
    }
    auto suspension = r.choice<SuspensionPolicy>("suspension",
                                                 {{"omit-cites", SuspensionPolicy::OmitCitations},
                                                  {"include-docs", SuspensionPolicy::IncludeDocuments},
                                                  {"none", SuspensionPolicy::None}},
                                                 "omit-cites");
    bool merge = r.boolean("merge-renames").value_or(true);
    auto numerators = r.choices<NumeratorMode>(
        "numerator", {{"mm", NumeratorMode::MM}, {"am", NumeratorMode::AM}, {"oneone", NumeratorMode::OneOne}},
        "mm,am,oneone");
    auto denominators = r.choices<DenominatorMode>(
        "denominator", {{"citable", DenominatorMode::CitableOnly}, {"all", DenominatorMode::AllItems}}, "citable");
    auto self_cites = r.choices<SelfCitePolicy>(
        "self-cites", {{"include", SelfCitePolicy::Include}, {"exclude", SelfCitePolicy::Exclude}}, "include");
    for (auto n : numerators) {
        for (auto d : denominators) {
            for (auto s : self_cites) {
                IndexVariantSpec spec;
                spec.numerator_mode = n;
                spec.denominator_mode = d;
                spec.self_cites = s;
                spec.census_year = cfg.census_year.value_or(0);
                spec.window_years = window;
                spec.suspension_policy = suspension;
                spec.merge_renames = merge;
                cfg.variants.push_back(spec);
            }
        }
    }

    auto seed = r.number<std::uint64_t>("seed");
    auto replicates = r.number<long long>("replicates");
    auto level = r.number<double>("level");
    if (seed) {
        BootstrapConfig b;
        b.seed = *seed;
        if (replicates) {
            if (*replicates < 1) throw ConfigError("replicates must be >= 1");
            b.replicates = static_cast<std::size_t>(*replicates);
        }
        if (level) {
            if (!(*level > 0.0 && *level < 1.0)) throw ConfigError("level must lie strictly between 0 and 1");
            b.level = *level;
        }
        cfg.bootstrap = b;
    } else if (replicates || level) {
        throw ConfigError("bootstrap settings need a seed");
    }

    cfg.rounding = r.choice<RoundingPolicy>("rounding",
                                            {{"3dp", RoundingPolicy::ThreeDecimal},
                                             {"1dp", RoundingPolicy::OneDecimal},
                                             {"error-aware", RoundingPolicy::ErrorAware}},
                                            "3dp");

    auto rate = [&](const std::string& key, double& target) {
        if (auto v = r.number<double>(key)) {
            if (!(*v >= 0.0 && *v <= 1.0)) throw ConfigError(key + " must lie in [0, 1]");
            target = *v;
        }
    };
    rate("self-citation-threshold", cfg.thresholds.self_citation);
    rate("editorial-threshold", cfg.thresholds.editorial_share);
    rate("error-rate-threshold", cfg.thresholds.citing_error_rate);
    rate("coverage-target", cfg.coverage_target);
    if (const auto* v = r.get("test-denylist")) cfg.thresholds.test_denylist = split_list(*v);

    cfg.strict = r.boolean("strict").value_or(false);
    if (auto v = r.number<long long>("threads")) {
        if (*v < 0) throw ConfigError("threads must be >= 0");
        cfg.threads = static_cast<unsigned>(*v);
    }
    return cfg;
}

}  // namespace garfield
