#ifndef GARFIELD_AUDIT_HPP
#define GARFIELD_AUDIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "garfield/indices.hpp"

namespace garfield {

enum class FlagCode {
    SELF_CITATION_HIGH,
    EDITORIAL_NUMERATOR,
    PRE_COMMENCEMENT_CITE,
    VOLUME_YEAR_MISMATCH,
    TEST_ARTIFACT,
    GHOST_HEAVY_CITER,
    DUPLICATE_TARGET,
};

std::string_view to_string(FlagCode c);

/// Flags raised by a rate crossing a configured threshold.
inline bool is_threshold_flag(FlagCode c) {
    return c == FlagCode::SELF_CITATION_HIGH || c == FlagCode::EDITORIAL_NUMERATOR ||
           c == FlagCode::GHOST_HEAVY_CITER;
}

struct AuditFlag {
    FlagCode code = FlagCode::SELF_CITATION_HIGH;
    std::string subject;
    double magnitude = 0.0;
    std::string detail;
    std::vector<std::string> evidence;  // record ids, or "doc_id#ref_index"

    bool operator==(const AuditFlag&) const = default;
};

struct AuditThresholds {
    double self_citation = 0.20;
    double editorial_share = 0.25;
    double citing_error_rate = 0.25;
    std::vector<std::string> test_denylist{"TEST"};
};

/// Census year and trailing window the audit looks at.
struct CitationWindow {
    int census_year = 0;
    int years = 2;
};

struct SelfCitationReport {
    std::int64_t self_citations = 0;
    std::int64_t total = 0;
    std::optional<double> rate;  // undefined without incoming citations
    std::vector<std::pair<std::string, std::int64_t>> by_source;  // count descending
    std::optional<AuditFlag> flag;
};

/// Share of verified incoming citations in the window that come from the
/// journal (or its lineage) itself. Flags above `threshold`.
SelfCitationReport self_citation_report(const JournalScope& scope, const CitationIndex& index, CitationWindow window,
                                        double threshold = 0.20);

struct EditorialReport {
    std::int64_t numerator = 0;        // string-match numerator
    std::int64_t from_noncitable = 0;  // part of it made by editorials, letters, ...
    std::optional<double> share;
    std::optional<AuditFlag> flag;
};

/// Fraction of the string-match numerator contributed by non-citable citing
/// documents. Flags above `threshold`.
EditorialReport editorial_contribution(const JournalScope& scope, const CitationIndex& index, CitationWindow window,
                                       double threshold = 0.25);

/// Per-reference checks: citations to years before commencement or inside a
/// coverage gap, volume/year pairs contradicting the volume map, and
/// denylisted test records that fail to resolve.
std::vector<AuditFlag> temporal_anomalies(const CitationIndex& index,
                                          const std::vector<std::string>& test_denylist = {"TEST"});

/// Citing documents linking two or more references to the same target.
std::vector<AuditFlag> duplicate_targets(const CitationIndex& index);

struct CitingErrorReport {
    std::int64_t outgoing = 0;
    std::int64_t errors = 0;  // Ghost + Faulty
    double rate = 0.0;
    std::optional<AuditFlag> flag;
};

/// Share of the journal's outgoing references classified Ghost or Faulty.
/// Flags at or above `threshold` when at least one reference is in error.
/// Throws NoOutgoingReferences.
CitingErrorReport citing_error_rate(const JournalScope& scope, const CitationIndex& index, double threshold = 0.25);

struct JournalAuditMetrics {
    std::string journal_id;
    SelfCitationReport self_citation;
    EditorialReport editorial;
    std::optional<CitingErrorReport> citing_errors;
};

struct AuditReport {
    std::vector<AuditFlag> flags;  // sorted by code, subject, detail
    std::vector<JournalAuditMetrics> metrics;

    bool threshold_breached() const;
};

AuditReport run_audit(const CitationIndex& index, const std::vector<JournalScope>& scopes, CitationWindow window,
                      const AuditThresholds& thresholds);

}  // namespace garfield

#endif  // GARFIELD_AUDIT_HPP
