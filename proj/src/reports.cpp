#include "garfield/reports.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "garfield/csv.hpp"
#include "garfield/error.hpp"
#include "garfield/text.hpp"

namespace garfield {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

std::string join(const std::vector<std::string>& items, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += items[i];
    }
    return out;
}

std::vector<std::string> spec_columns(const IndexResult& r) {
    return {r.journal_id, std::string(to_string(r.spec.numerator_mode)), std::string(to_string(r.spec.denominator_mode)),
            std::string(to_string(r.spec.self_cites)), window_label(r.spec)};
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw SchemaError(std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

}  // namespace

std::string window_label(const IndexVariantSpec& spec) {
    return std::to_string(spec.first_cohort_year()) + "-" + std::to_string(spec.last_cohort_year());
}

void write_validation_csv(std::ostream& out, const LoadReport& load, const std::vector<ValidationIssue>& issues) {
    CsvWriter csv(out, {"severity", "code", "subject", "message"});
    for (const auto& m : load.malformed) {
        csv.row({"error", "MALFORMED_LINE", m.file + ":" + std::to_string(m.line), m.reason});
    }
    for (const auto& i : issues) {
        csv.row({std::string(to_string(i.severity)), i.code, i.subject, i.message});
    }
}

void write_merges_csv(std::ostream& out, const MergeReport& report) {
    CsvWriter csv(out, {"status", "survivor", "doc_ids", "detail"});
    for (const auto& g : report.merges) {
        csv.row({"merged", g.survivor, join(g.merged), ""});
    }
    for (const auto& c : report.conflicts) {
        csv.row({"conflict", "", join(c.doc_ids), c.detail});
    }
}

void write_links_csv(std::ostream& out, const std::vector<ResolvedLink>& links) {
    CsvWriter csv(out, {"citing_doc_id", "ref_index", "target_doc_id", "target_journal_id", "match_class", "score"});
    for (const auto& l : links) {
        csv.row({l.citing_doc_id, std::to_string(l.ref_index), l.target_doc_id.value_or(""),
                 l.target_journal_id.value_or(""), std::string(to_string(l.match_class)), format_number(l.score)});
    }
}

std::vector<ResolvedLink> read_links_csv(std::istream& in) {
    auto rows = parse_csv(in);
    if (rows.empty()) {
        throw SchemaError("links file is empty");
    }
    const std::vector<std::string> header{"citing_doc_id", "ref_index",  "target_doc_id",
                                          "target_journal_id", "match_class", "score"};
    if (rows.front() != header) {
        throw SchemaError("links file has an unexpected header");
    }
    std::vector<ResolvedLink> links;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != header.size()) {
            throw SchemaError("links row " + std::to_string(i + 1) + " has " + std::to_string(r.size()) + " fields");
        }
        ResolvedLink l;
        l.citing_doc_id = r[0];
        l.ref_index = parse_number<std::size_t>(r[1], "ref_index");
        if (!r[2].empty()) {
            l.target_doc_id = r[2];
        }
        if (!r[3].empty()) {
            l.target_journal_id = r[3];
        }
        auto cls = parse_match_class(r[4]);
        if (!cls) {
            throw SchemaError("unknown match class '" + r[4] + "'");
        }
        l.match_class = *cls;
        l.score = parse_number<double>(r[5], "score");
        links.push_back(std::move(l));
    }
    return links;
}

void write_index_csv(std::ostream& out, const std::vector<IndexRow>& rows) {
    CsvWriter csv(out, {"journal_id", "numerator_mode", "denominator_mode", "self_cites", "window", "N", "D", "value",
                        "ci_low", "ci_high", "display", "rank"});
    for (const auto& row : rows) {
        const auto& r = row.result;
        auto cols = spec_columns(r);
        cols.push_back(std::to_string(r.numerator));
        cols.push_back(std::to_string(r.denominator));
        cols.push_back(opt(r.value));
        cols.push_back(r.ci ? format_number(r.ci->low) : "n/a");
        cols.push_back(r.ci ? format_number(r.ci->high) : "n/a");
        cols.push_back(r.display);
        cols.push_back(row.rank > 0 ? std::to_string(row.rank) : "");
        csv.row(cols);
    }
}

void write_distribution_csv(std::ostream& out, const std::vector<std::pair<IndexResult, DistributionSummary>>& rows) {
    CsvWriter csv(out, {"journal_id", "numerator_mode", "denominator_mode", "self_cites", "window", "n_docs", "mean",
                        "median", "mode", "min", "max", "share_uncited"});
    for (const auto& [r, s] : rows) {
        auto cols = spec_columns(r);
        cols.insert(cols.end(), {std::to_string(s.n_docs), format_number(s.mean), format_number(s.median),
                                 std::to_string(s.mode), std::to_string(s.min), std::to_string(s.max),
                                 format_number(s.share_uncited)});
        csv.row(cols);
    }
}

void write_accrual_csv(std::ostream& out, const std::vector<AccrualRow>& rows) {
    CsvWriter csv(out, {"journal_id", "cohort_year", "offset", "count"});
    for (const auto& row : rows) {
        for (const auto& [offset, count] : row.curve.counts_by_offset) {
            csv.row({row.curve.journal_id, std::to_string(row.curve.cohort_year), std::to_string(offset),
                     std::to_string(count)});
        }
    }
}

void write_accrual_summary_csv(std::ostream& out, const std::vector<AccrualRow>& rows) {
    CsvWriter csv(out, {"journal_id", "cohort_year", "total", "peak_offset", "suggested_window", "anomalies"});
    for (const auto& row : rows) {
        const auto& c = row.curve;
        csv.row({c.journal_id, std::to_string(c.cohort_year), std::to_string(c.total()),
                 c.counts_by_offset.empty() ? "n/a" : std::to_string(c.peak_offset),
                 row.suggested_window ? std::to_string(*row.suggested_window) : "n/a", join(c.anomalies)});
    }
}

void write_curve_plot(std::ostream& out, const AccrualCurve& curve) {
    out << "# " << curve.journal_id << ' ' << curve.cohort_year << "\n# offset count\n";
    for (const auto& [offset, count] : curve.counts_by_offset) {
        out << offset << ' ' << count << '\n';
    }
}

void write_audit_csv(std::ostream& out, const std::vector<AuditFlag>& flags) {
    CsvWriter csv(out, {"code", "subject", "magnitude", "detail", "evidence_ids"});
    for (const auto& f : flags) {
        csv.row({std::string(to_string(f.code)), f.subject, format_number(f.magnitude), f.detail, join(f.evidence)});
    }
}

void write_audit_metrics_csv(std::ostream& out, const std::vector<JournalAuditMetrics>& metrics) {
    CsvWriter csv(out, {"journal_id", "self_citations", "verified_incoming", "self_citation_rate", "mm_numerator",
                        "noncitable_share", "outgoing", "ghost_or_faulty", "citing_error_rate"});
    for (const auto& m : metrics) {
        const auto& ce = m.citing_errors;
        csv.row({m.journal_id, std::to_string(m.self_citation.self_citations), std::to_string(m.self_citation.total),
                 opt(m.self_citation.rate), std::to_string(m.editorial.numerator), opt(m.editorial.share),
                 ce ? std::to_string(ce->outgoing) : "0", ce ? std::to_string(ce->errors) : "0",
                 ce ? format_number(ce->rate) : "n/a"});
    }
}

}  // namespace garfield
