#include "garfield/audit.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "garfield/error.hpp"
#include "garfield/text.hpp"

namespace garfield {

std::string_view to_string(FlagCode c) {
    switch (c) {
        case FlagCode::SELF_CITATION_HIGH: return "SELF_CITATION_HIGH";
        case FlagCode::EDITORIAL_NUMERATOR: return "EDITORIAL_NUMERATOR";
        case FlagCode::PRE_COMMENCEMENT_CITE: return "PRE_COMMENCEMENT_CITE";
        case FlagCode::VOLUME_YEAR_MISMATCH: return "VOLUME_YEAR_MISMATCH";
        case FlagCode::TEST_ARTIFACT: return "TEST_ARTIFACT";
        case FlagCode::GHOST_HEAVY_CITER: return "GHOST_HEAVY_CITER";
        case FlagCode::DUPLICATE_TARGET: return "DUPLICATE_TARGET";
    }
    return "UNKNOWN";
}

bool AuditReport::threshold_breached() const {
    return std::any_of(flags.begin(), flags.end(), [](const AuditFlag& f) { return is_threshold_flag(f.code); });
}

namespace {

std::string ref_id(const CitationIndex& index, const CitationIndex::Citation& c) {
    return index.citing(c).doc_id + "#" + std::to_string(index.reference(c).ref_index);
}

}  // namespace

SelfCitationReport self_citation_report(const JournalScope& scope, const CitationIndex& index, CitationWindow window,
                                        double threshold) {
    SelfCitationReport report;
    std::map<std::string, std::int64_t> sources;
    std::vector<std::string> self_refs;
    for (const auto& member : scope.members) {
        for (auto id : index.by_target_journal(member)) {
            const auto& c = index.citations()[id];
            const auto& citing = index.citing(c);
            if (citing.year != window.census_year || !index.counts_as_verified(c.link->match_class)) {
                continue;
            }
            if (c.target->year < window.census_year - window.years || c.target->year > window.census_year - 1) {
                continue;
            }
            ++report.total;
            ++sources[citing.journal_id];
            if (scope.contains(citing.journal_id)) {
                ++report.self_citations;
                self_refs.push_back(ref_id(index, c));
            }
        }
    }
    report.by_source.assign(sources.begin(), sources.end());
    std::stable_sort(report.by_source.begin(), report.by_source.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (report.total == 0) {
        return report;
    }
    report.rate = static_cast<double>(report.self_citations) / static_cast<double>(report.total);
    if (*report.rate > threshold) {
        std::sort(self_refs.begin(), self_refs.end());
        report.flag = AuditFlag{FlagCode::SELF_CITATION_HIGH, scope.id(), *report.rate,
                                std::to_string(report.self_citations) + " of " + std::to_string(report.total) +
                                    " verified citations are self-citations (rate " + format_number(*report.rate) + ")",
                                std::move(self_refs)};
    }
    return report;
}

EditorialReport editorial_contribution(const JournalScope& scope, const CitationIndex& index, CitationWindow window,
                                       double threshold) {
    IndexVariantSpec spec;
    spec.numerator_mode = NumeratorMode::MM;
    spec.self_cites = SelfCitePolicy::Include;
    spec.census_year = window.census_year;
    spec.window_years = window.years;
    spec.suspension_policy = SuspensionPolicy::None;

    EditorialReport report;
    std::set<std::string> contributors;
    for (auto id : numerator_citations(scope, index, spec)) {
        const auto& c = index.citations()[id];
        ++report.numerator;
        if (!index.citing(c).citable()) {
            ++report.from_noncitable;
            contributors.insert(index.citing(c).doc_id);
        }
    }
    if (report.numerator == 0) {
        return report;
    }
    report.share = static_cast<double>(report.from_noncitable) / static_cast<double>(report.numerator);
    if (*report.share > threshold) {
        report.flag = AuditFlag{FlagCode::EDITORIAL_NUMERATOR, scope.id(), *report.share,
                                std::to_string(report.from_noncitable) + " of " + std::to_string(report.numerator) +
                                    " numerator citations come from non-citable items",
                                {contributors.begin(), contributors.end()}};
    }
    return report;
}

std::vector<AuditFlag> temporal_anomalies(const CitationIndex& index, const std::vector<std::string>& test_denylist) {
    const auto& corpus = index.corpus();
    const auto trunc = index.config().truncation_length;
    std::set<std::string> denied;
    for (const auto& t : test_denylist) {
        denied.insert(normalize_work_title(t, trunc));
    }

    std::vector<AuditFlag> flags;
    for (const auto& c : index.citations()) {
        const auto& ref = index.reference(c);
        const auto rid = ref_id(index, c);
        const auto& citing = index.citing(c);

        const JournalRecord* journal = nullptr;
        if (c.target) {
            journal = corpus.find_journal(c.target->journal_id);
        } else if (c.link && c.link->target_journal_id) {
            journal = corpus.find_journal(*c.link->target_journal_id);
        }
        if (journal && ref.cited_year && journal->in_coverage_gap(*ref.cited_year)) {
            std::string why = *ref.cited_year < journal->commencement_year
                                  ? "before commencement in " + std::to_string(journal->commencement_year)
                                  : "inside a coverage gap";
            flags.push_back({FlagCode::PRE_COMMENCEMENT_CITE, citing.doc_id, 1.0,
                             "cites " + journal->journal_id + " " + std::to_string(*ref.cited_year) + ", " + why,
                             {rid, journal->journal_id}});
        }
        if (journal && ref.cited_year && ref.cited_volume) {
            auto mapped = journal->year_of_volume(*ref.cited_volume);
            if (mapped && *mapped != *ref.cited_year) {
                flags.push_back({FlagCode::VOLUME_YEAR_MISMATCH, citing.doc_id, 1.0,
                                 "cites " + journal->journal_id + " volume " + std::to_string(*ref.cited_volume) +
                                     " (" + std::to_string(*ref.cited_year) + "), volume belongs to " +
                                     std::to_string(*mapped),
                                 {rid, journal->journal_id}});
            }
        }
        bool unresolved = !c.link || !is_verified(c.link->match_class);
        if (unresolved && denied.count(normalize_work_title(ref.cited_work, trunc))) {
            flags.push_back({FlagCode::TEST_ARTIFACT, citing.doc_id, 1.0,
                             "unresolved reference to denylisted work '" + ref.cited_work + "'",
                             {rid}});
        }
    }
    return flags;
}

std::vector<AuditFlag> duplicate_targets(const CitationIndex& index) {
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> seen;
    for (const auto& c : index.citations()) {
        if (!c.target) {
            continue;
        }
        seen[{index.citing(c).doc_id, c.target->doc_id}].push_back(ref_id(index, c));
    }
    std::vector<AuditFlag> flags;
    for (auto& [key, refs] : seen) {
        if (refs.size() < 2) {
            continue;
        }
        flags.push_back({FlagCode::DUPLICATE_TARGET, key.first, static_cast<double>(refs.size()),
                         std::to_string(refs.size()) + " references link to " + key.second, std::move(refs)});
    }
    return flags;
}

CitingErrorReport citing_error_rate(const JournalScope& scope, const CitationIndex& index, double threshold) {
    CitingErrorReport report;
    std::vector<std::string> bad;
    for (const auto& member : scope.members) {
        for (auto id : index.by_citing_journal(member)) {
            const auto& c = index.citations()[id];
            ++report.outgoing;
            if (!c.link || c.link->match_class == MatchClass::Ghost || c.link->match_class == MatchClass::Faulty) {
                ++report.errors;
                bad.push_back(ref_id(index, c));
            }
        }
    }
    if (report.outgoing == 0) {
        throw NoOutgoingReferences(scope.id() + " has no outgoing references");
    }
    report.rate = static_cast<double>(report.errors) / static_cast<double>(report.outgoing);
    if (report.errors > 0 && report.rate >= threshold) {
        std::sort(bad.begin(), bad.end());
        report.flag = AuditFlag{FlagCode::GHOST_HEAVY_CITER, scope.id(), report.rate,
                                std::to_string(report.errors) + " of " + std::to_string(report.outgoing) +
                                    " outgoing references are ghost or faulty",
                                std::move(bad)};
    }
    return report;
}

AuditReport run_audit(const CitationIndex& index, const std::vector<JournalScope>& scopes, CitationWindow window,
                      const AuditThresholds& thresholds) {
    AuditReport report;
    for (const auto& scope : scopes) {
        JournalAuditMetrics m;
        m.journal_id = scope.id();
        m.self_citation = self_citation_report(scope, index, window, thresholds.self_citation);
        m.editorial = editorial_contribution(scope, index, window, thresholds.editorial_share);
        try {
            m.citing_errors = citing_error_rate(scope, index, thresholds.citing_error_rate);
        } catch (const NoOutgoingReferences&) {
        }
        for (const auto* flag : {&m.self_citation.flag, &m.editorial.flag}) {
            if (*flag) {
                report.flags.push_back(**flag);
            }
        }
        if (m.citing_errors && m.citing_errors->flag) {
            report.flags.push_back(*m.citing_errors->flag);
        }
        report.metrics.push_back(std::move(m));
    }
    auto temporal = temporal_anomalies(index, thresholds.test_denylist);
    report.flags.insert(report.flags.end(), temporal.begin(), temporal.end());
    auto dups = duplicate_targets(index);
    report.flags.insert(report.flags.end(), dups.begin(), dups.end());
    std::stable_sort(report.flags.begin(), report.flags.end(), [](const AuditFlag& a, const AuditFlag& b) {
        return std::tie(a.code, a.subject, a.detail, a.evidence) < std::tie(b.code, b.subject, b.detail, b.evidence);
    });
    return report;
}

}  // namespace garfield
