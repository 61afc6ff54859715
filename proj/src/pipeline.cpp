#include "garfield/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "garfield/audit.hpp"
#include "garfield/corpus.hpp"
#include "garfield/error.hpp"
#include "garfield/indices.hpp"
#include "garfield/reports.hpp"
#include "garfield/resolver.hpp"
#include "garfield/stats.hpp"
#include "garfield/text.hpp"

namespace garfield {

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::Validate: return "validate";
        case Stage::Resolve: return "resolve";
        case Stage::Compute: return "compute";
        case Stage::Stats: return "stats";
        case Stage::Audit: return "audit";
        case Stage::Report: return "report";
    }
    return "report";
}

std::optional<Stage> parse_stage(std::string_view s) {
    for (auto st : {Stage::Validate, Stage::Resolve, Stage::Compute, Stage::Stats, Stage::Audit, Stage::Report}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

namespace {

unsigned worker_count(unsigned threads, std::size_t tasks) {
    unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

/// Calls fn(i) for i in [0, n) on up to `threads` workers. fn writes only to
/// slot i of a preallocated result, so completion order does not matter.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
    auto workers = worker_count(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (auto i = next++; i < n; i = next++) {
                        fn(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = n;
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::ofstream open_report(const std::filesystem::path& dir, const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + (dir / name).string());
    }
    return out;
}

std::string file_safe(const std::string& id) {
    std::string out;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                  c == '_' || c == '+' || c == '.';
        out += ok ? c : '_';
    }
    return out;
}

bool wants(Stage run, Stage produced) { return run == Stage::Report || run == produced; }

struct Inputs {
    LoadReport load;
    std::vector<ValidationIssue> issues;
    Corpus corpus;  // deduplicated
    MergeReport merges;
    std::size_t raw_documents = 0;
};

Inputs ingest(const RunConfig& cfg) {
    auto loaded = load_corpus(cfg.journals, cfg.documents);
    Inputs in;
    in.load = std::move(loaded.report);
    in.issues = validate_corpus(loaded.corpus);
    in.raw_documents = loaded.corpus.documents().size();
    auto deduped = dedupe_documents(loaded.corpus);
    in.corpus = std::move(deduped.corpus);
    in.merges = std::move(deduped.report);
    return in;
}

std::vector<ResolvedLink> load_links(const std::filesystem::path& path, const Corpus& corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileMissing("links file not found: " + path.string());
    }
    auto links = read_links_csv(in);
    for (const auto& l : links) {
        const auto* doc = corpus.find_document(l.citing_doc_id);
        if (!doc || l.ref_index >= doc->references.size()) {
            throw SchemaError("link " + l.citing_doc_id + "#" + std::to_string(l.ref_index) +
                              " does not match a reference in the corpus");
        }
        if (l.target_doc_id && !corpus.find_document(*l.target_doc_id)) {
            throw SchemaError("link target " + *l.target_doc_id + " is not in the corpus");
        }
        if (l.target_journal_id && !corpus.find_journal(*l.target_journal_id)) {
            throw SchemaError("link target journal " + *l.target_journal_id + " is not in the corpus");
        }
    }
    std::stable_sort(links.begin(), links.end(), [](const ResolvedLink& a, const ResolvedLink& b) {
        return std::tie(a.citing_doc_id, a.ref_index) < std::tie(b.citing_doc_id, b.ref_index);
    });
    return links;
}

int default_census_year(const Corpus& corpus) {
    int year = 0;
    for (const auto& d : corpus.documents()) {
        year = std::max(year, d.year);
    }
    return year;
}

struct Computed {
    std::vector<IndexRow> rows;  // scope-major, variant order within a scope
    std::vector<std::string> notes;
};

Computed compute_all(const std::vector<JournalScope>& scopes, const CitationIndex& index,
                     const std::vector<IndexVariantSpec>& variants, const RunConfig& cfg) {
    const auto nv = variants.size();
    std::vector<IndexRow> rows(scopes.size() * nv);
    std::vector<std::string> notes(rows.size());
    IndexOptions options;
    options.rounding = cfg.rounding;
    options.bootstrap = cfg.bootstrap;
    options.threads = 1;
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
        const auto& scope = scopes[i / nv];
        const auto& spec = variants[i % nv];
        try {
            rows[i].result = compute_index_or_undefined(scope, index, spec, options);
        } catch (const MissingDocuments& e) {
            IndexResult r;
            r.journal_id = scope.id();
            r.spec = spec;
            r.display = "n/a";
            rows[i].result = std::move(r);
            notes[i] = e.what();
        }
    });
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<IndexResult> same;
        for (std::size_t s = 0; s < scopes.size(); ++s) {
            same.push_back(rows[s * nv + v].result);
        }
        std::map<std::string, int> rank_of;
        for (const auto& r : rank_journals(same, cfg.rounding)) {
            rank_of[r.journal_id] = r.rank;
        }
        for (std::size_t s = 0; s < scopes.size(); ++s) {
            rows[s * nv + v].rank = rank_of[scopes[s].id()];
        }
    }
    Computed out;
    out.rows = std::move(rows);
    for (auto& n : notes) {
        if (!n.empty()) {
            out.notes.push_back(std::move(n));
        }
    }
    return out;
}

std::vector<AccrualRow> accrual_all(const std::vector<JournalScope>& scopes, const CitationIndex& index,
                                    const RunConfig& cfg) {
    std::vector<std::pair<std::size_t, int>> tasks;
    const auto& corpus = index.corpus();
    for (std::size_t s = 0; s < scopes.size(); ++s) {
        std::set<int> years;
        for (const auto& member : scopes[s].members) {
            for (auto d : corpus.documents_of(member)) {
                if (corpus.documents()[d].citable()) {
                    years.insert(corpus.documents()[d].year);
                }
            }
        }
        for (int y : years) {
            tasks.emplace_back(s, y);
        }
    }
    std::vector<AccrualRow> rows(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
        rows[i].curve = accrual_curve(scopes[tasks[i].first], tasks[i].second, index);
        try {
            rows[i].suggested_window = suggest_window(rows[i].curve, cfg.coverage_target);
        } catch (const DegenerateCurve&) {
        }
    });
    return rows;
}

void print_summary(std::ostream& out, const RunConfig& cfg, Stage stage, const Inputs& in,
                   const std::vector<ResolvedLink>* links, const Computed* computed, const AuditReport* audit) {
    out << "garfield " << to_string(stage) << '\n';
    out << "  journals " << in.corpus.journals().size() << ", documents " << in.raw_documents << " read, "
        << in.corpus.documents().size() << " after dedupe, references " << in.corpus.reference_count() << '\n';
    out << "  malformed lines " << in.load.malformed.size() << ", validation issues " << in.issues.size()
        << ", merges " << in.merges.merges.size() << ", conflicts " << in.merges.conflicts.size() << '\n';
    if (links) {
        std::map<MatchClass, std::size_t> by_class;
        for (const auto& l : *links) {
            ++by_class[l.match_class];
        }
        out << "  links";
        for (auto c : {MatchClass::CompleteCorrect, MatchClass::IncompleteCorrect, MatchClass::Faulty,
                       MatchClass::Ghost}) {
            out << ' ' << to_string(c) << '=' << by_class[c];
        }
        out << '\n';
    }
    if (computed && !computed->rows.empty()) {
        constexpr std::size_t kMaxRows = 12;
        out << "  " << std::left << std::setw(16) << "journal" << std::setw(8) << "num" << std::setw(9) << "denom"
            << std::setw(9) << "self" << std::setw(11) << "window" << std::right << std::setw(7) << "N"
            << std::setw(7) << "D" << std::setw(10) << "value" << std::setw(6) << "rank" << '\n';
        std::size_t shown = 0;
        for (const auto& row : computed->rows) {
            if (shown++ == kMaxRows) {
                out << "  ... " << computed->rows.size() - kMaxRows << " more rows in indices.csv\n";
                break;
            }
            const auto& r = row.result;
            out << "  " << std::left << std::setw(16) << r.journal_id << std::setw(8) << to_string(r.spec.numerator_mode)
                << std::setw(9) << to_string(r.spec.denominator_mode) << std::setw(9) << to_string(r.spec.self_cites)
                << std::setw(11) << window_label(r.spec) << std::right << std::setw(7) << r.numerator << std::setw(7)
                << r.denominator << std::setw(10) << r.display << std::setw(6)
                << (row.rank > 0 ? std::to_string(row.rank) : "-") << '\n';
        }
    }
    if (audit) {
        std::map<FlagCode, std::size_t> by_code;
        for (const auto& f : audit->flags) {
            ++by_code[f.code];
        }
        out << "  audit flags " << audit->flags.size();
        for (const auto& [code, n] : by_code) {
            out << ' ' << to_string(code) << '=' << n;
        }
        out << '\n';
        if (cfg.strict && audit->threshold_breached()) {
            out << "  strict: threshold breached\n";
        }
    }
    out << "  reports in " << cfg.out.string() << '\n';
}

int run(const RunConfig& cfg, Stage stage, std::ostream& summary, std::ostream& diag) {
    Inputs in;
    try {
        in = ingest(cfg);
    } catch (const FileMissing& e) {
        diag << "error: " << e.what() << '\n';
        return exit_code::ingest_failure;
    } catch (const TooManyMalformed& e) {
        diag << "error: " << e.what() << '\n';
        return exit_code::ingest_failure;
    } catch (const SchemaError& e) {
        diag << "error: " << e.what() << '\n';
        return exit_code::ingest_failure;
    }
    const auto& corpus = in.corpus;

    std::filesystem::create_directories(cfg.out);
    if (wants(stage, Stage::Validate)) {
        auto out = open_report(cfg.out, "validation.csv");
        write_validation_csv(out, in.load, in.issues);
        auto m = open_report(cfg.out, "merges.csv");
        write_merges_csv(m, in.merges);
    }
    if (stage == Stage::Validate) {
        print_summary(summary, cfg, stage, in, nullptr, nullptr, nullptr);
        return exit_code::ok;
    }

    std::vector<ResolvedLink> links;
    if (cfg.links && stage != Stage::Resolve) {
        try {
            links = load_links(*cfg.links, corpus);
        } catch (const Error& e) {
            diag << "error: " << e.what() << '\n';
            return exit_code::ingest_failure;
        }
    } else {
        links = resolve_corpus(corpus, cfg.resolution, cfg.threads);
    }
    if (wants(stage, Stage::Resolve)) {
        auto out = open_report(cfg.out, "links.csv");
        write_links_csv(out, links);
    }
    if (stage == Stage::Resolve) {
        print_summary(summary, cfg, stage, in, &links, nullptr, nullptr);
        return exit_code::ok;
    }

    const CitationIndex index(corpus, links, cfg.resolution);
    bool merge = cfg.variants.empty() || cfg.variants.front().merge_renames;
    const auto scopes = journal_scopes(corpus, merge);
    const int census = cfg.census_year.value_or(default_census_year(corpus));
    auto variants = cfg.variants;
    for (auto& v : variants) {
        v.census_year = census;
    }

    std::optional<Computed> computed;
    if (wants(stage, Stage::Compute) || wants(stage, Stage::Stats)) {
        computed = compute_all(scopes, index, variants, cfg);
        for (const auto& note : computed->notes) {
            diag << "warning: " << note << '\n';
        }
    }
    if (wants(stage, Stage::Compute)) {
        auto out = open_report(cfg.out, "indices.csv");
        write_index_csv(out, computed->rows);
    }
    if (wants(stage, Stage::Stats)) {
        std::vector<std::pair<IndexResult, DistributionSummary>> dist;
        for (const auto& row : computed->rows) {
            if (!row.result.per_document_counts.empty()) {
                dist.emplace_back(row.result, distribution_summary(row.result.per_document_counts));
            }
        }
        auto d = open_report(cfg.out, "distribution.csv");
        write_distribution_csv(d, dist);

        auto accrual = accrual_all(scopes, index, cfg);
        auto a = open_report(cfg.out, "accrual.csv");
        write_accrual_csv(a, accrual);
        auto s = open_report(cfg.out, "accrual_summary.csv");
        write_accrual_summary_csv(s, accrual);
        const auto curves = cfg.out / "curves";
        std::filesystem::remove_all(curves);
        std::filesystem::create_directories(curves);
        for (const auto& row : accrual) {
            auto f = open_report(curves, file_safe(row.curve.journal_id) + "_" + std::to_string(row.curve.cohort_year) +
                                             ".tsv");
            write_curve_plot(f, row.curve);
        }
    }

    std::optional<AuditReport> audit;
    if (wants(stage, Stage::Audit)) {
        int years = variants.empty() ? 2 : variants.front().window_years;
        audit = run_audit(index, scopes, CitationWindow{census, years}, cfg.thresholds);
        auto f = open_report(cfg.out, "audit.csv");
        write_audit_csv(f, audit->flags);
        auto m = open_report(cfg.out, "audit_metrics.csv");
        write_audit_metrics_csv(m, audit->metrics);
    }

    print_summary(summary, cfg, stage, in, &links, computed ? &*computed : nullptr, audit ? &*audit : nullptr);
    if (cfg.strict && audit && audit->threshold_breached()) {
        return exit_code::audit_breach;
    }
    return exit_code::ok;
}

}  // namespace

int run_pipeline(const RunConfig& cfg, Stage stage, std::ostream& summary, std::ostream& diag) {
    try {
        return run(cfg, stage, summary, diag);
    } catch (const ConfigError& e) {
        diag << "error: " << e.what() << '\n';
        return exit_code::config_error;
    }
}

}  // namespace garfield
