#ifndef GARFIELD_REPORTS_HPP
#define GARFIELD_REPORTS_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "garfield/audit.hpp"
#include "garfield/corpus.hpp"
#include "garfield/indices.hpp"
#include "garfield/resolver.hpp"
#include "garfield/stats.hpp"

namespace garfield {

// CSV report layouts. Every file starts with the header row listed here.
//
//   validation.csv   severity,code,subject,message
//   merges.csv       status,survivor,doc_ids,detail
//   links.csv        citing_doc_id,ref_index,target_doc_id,target_journal_id,match_class,score
//   indices.csv      journal_id,numerator_mode,denominator_mode,self_cites,window,N,D,value,ci_low,ci_high,display,rank
//   distribution.csv journal_id,numerator_mode,denominator_mode,self_cites,window,n_docs,mean,median,mode,min,max,share_uncited
//   accrual.csv      journal_id,cohort_year,offset,count
//   accrual_summary.csv journal_id,cohort_year,total,peak_offset,suggested_window,anomalies
//   audit.csv        code,subject,magnitude,detail,evidence_ids
//   audit_metrics.csv journal_id,self_citations,verified_incoming,self_citation_rate,mm_numerator,noncitable_share,outgoing,ghost_or_faulty,citing_error_rate
//
// Numbers are written at full precision (shortest round-trip form); the
// display column carries the rounded value. Undefined quantities are "n/a".

void write_validation_csv(std::ostream& out, const LoadReport& load, const std::vector<ValidationIssue>& issues);
void write_merges_csv(std::ostream& out, const MergeReport& report);

void write_links_csv(std::ostream& out, const std::vector<ResolvedLink>& links);
/// Reads a links file written by write_links_csv. Field evidence is not
/// stored and comes back empty.
std::vector<ResolvedLink> read_links_csv(std::istream& in);

struct IndexRow {
    IndexResult result;
    int rank = 0;
};

void write_index_csv(std::ostream& out, const std::vector<IndexRow>& rows);
void write_distribution_csv(std::ostream& out, const std::vector<std::pair<IndexResult, DistributionSummary>>& rows);

struct AccrualRow {
    AccrualCurve curve;
    std::optional<int> suggested_window;
};

void write_accrual_csv(std::ostream& out, const std::vector<AccrualRow>& rows);
void write_accrual_summary_csv(std::ostream& out, const std::vector<AccrualRow>& rows);
/// Two whitespace-separated columns, offset and count, one line per offset.
void write_curve_plot(std::ostream& out, const AccrualCurve& curve);

void write_audit_csv(std::ostream& out, const std::vector<AuditFlag>& flags);
void write_audit_metrics_csv(std::ostream& out, const std::vector<JournalAuditMetrics>& metrics);

std::string window_label(const IndexVariantSpec& spec);

}  // namespace garfield

#endif  // GARFIELD_REPORTS_HPP
