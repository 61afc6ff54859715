#ifndef GARFIELD_STATS_HPP
#define GARFIELD_STATS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "garfield/indices.hpp"

namespace garfield {

struct DistributionSummary {
    std::size_t n_docs = 0;
    double mean = 0.0;
    double median = 0.0;
    std::int64_t mode = 0;  // smallest of the most frequent values
    std::int64_t min = 0;
    std::int64_t max = 0;
    double share_uncited = 0.0;
    std::int64_t total = 0;
};

/// Throws EmptyCohort on an empty sample.
DistributionSummary distribution_summary(std::span<const std::int64_t> per_document_counts);

/// Citations to one publication-year cohort, bucketed by years since publication.
struct AccrualCurve {
    std::string journal_id;
    int cohort_year = 0;
    std::vector<std::pair<int, std::int64_t>> counts_by_offset;  // ascending offset, non-zero counts only
    int peak_offset = 0;
    /// Citing documents dated before the cited document: "citing_doc#ref_index".
    std::vector<std::string> anomalies;

    std::int64_t total() const;
};

/// Counts verified links (as configured for the one-to-one numerator) from
/// citable citing documents to citable documents of the journal published in
/// `cohort_year`. Throws UnknownJournal, and EmptyCohort when the journal
/// published no citable documents that year.
AccrualCurve accrual_curve(const JournalScope& scope, int cohort_year, const CitationIndex& index);
AccrualCurve accrual_curve(std::string_view journal_id, int cohort_year, const CitationIndex& index);

/// Smallest window W >= 1 whose offsets 1..W hold at least `coverage_target`
/// of the citations at offsets >= 1. Throws DegenerateCurve when there are none.
int suggest_window(const AccrualCurve& curve, double coverage_target);

}  // namespace garfield

#endif  // GARFIELD_STATS_HPP
