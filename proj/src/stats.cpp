#include "garfield/stats.hpp"

#include <algorithm>
#include <map>

#include "garfield/error.hpp"

namespace garfield {

DistributionSummary distribution_summary(std::span<const std::int64_t> per_document_counts) {
    if (per_document_counts.empty()) {
        throw EmptyCohort("distribution of an empty cohort");
    }
    std::vector<std::int64_t> sorted(per_document_counts.begin(), per_document_counts.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    DistributionSummary s;
    s.n_docs = n;
    s.min = sorted.front();
    s.max = sorted.back();
    std::size_t uncited = 0;
    for (auto v : sorted) {
        s.total += v;
        uncited += v == 0 ? 1 : 0;
    }
    s.mean = static_cast<double>(s.total) / static_cast<double>(n);
    s.median = n % 2 == 1 ? static_cast<double>(sorted[n / 2])
                          : (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;
    s.share_uncited = static_cast<double>(uncited) / static_cast<double>(n);

    // runs in ascending order, so the first longest run is the smallest mode
    std::size_t best_run = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) {
            ++j;
        }
        if (j - i > best_run) {
            best_run = j - i;
            s.mode = sorted[i];
        }
        i = j;
    }
    return s;
}

std::int64_t AccrualCurve::total() const {
    std::int64_t t = 0;
    for (const auto& [offset, count] : counts_by_offset) {
        t += count;
    }
    return t;
}

AccrualCurve accrual_curve(const JournalScope& scope, int cohort_year, const CitationIndex& index) {
    const auto& corpus = index.corpus();
    bool any = false;
    for (const auto& m : scope.members) {
        for (auto pos : corpus.documents_by_year(m, cohort_year)) {
            any = any || corpus.documents()[pos].citable();
        }
    }
    if (!any) {
        throw EmptyCohort(scope.id() + " published no citable documents in " + std::to_string(cohort_year));
    }

    AccrualCurve curve;
    curve.journal_id = scope.id();
    curve.cohort_year = cohort_year;
    std::map<int, std::int64_t> buckets;
    std::vector<std::size_t> ids;
    for (const auto& m : scope.members) {
        const auto& v = index.by_target_journal(m);
        ids.insert(ids.end(), v.begin(), v.end());
    }
    std::sort(ids.begin(), ids.end());
    for (auto id : ids) {
        const auto& c = index.citations()[id];
        const auto& citing = index.citing(c);
        if (c.target->year != cohort_year || !c.target->citable() || !citing.citable() ||
            !index.counts_as_verified(c.link->match_class)) {
            continue;
        }
        int offset = citing.year - cohort_year;
        if (offset < 0) {
            curve.anomalies.push_back(citing.doc_id + "#" + std::to_string(index.reference(c).ref_index));
            continue;
        }
        ++buckets[offset];
    }
    std::int64_t peak = 0;
    for (const auto& [offset, count] : buckets) {
        curve.counts_by_offset.emplace_back(offset, count);
        if (count > peak) {
            peak = count;
            curve.peak_offset = offset;
        }
    }
    return curve;
}

AccrualCurve accrual_curve(std::string_view journal_id, int cohort_year, const CitationIndex& index) {
    return accrual_curve(scope_of(index.corpus(), journal_id, false), cohort_year, index);
}

int suggest_window(const AccrualCurve& curve, double coverage_target) {
    if (!(coverage_target > 0.0 && coverage_target <= 1.0)) {
        throw ConfigError("coverage target must lie in (0, 1]");
    }
    std::int64_t total = 0;
    int last = 0;
    for (const auto& [offset, count] : curve.counts_by_offset) {
        if (offset >= 1) {
            total += count;
            last = std::max(last, offset);
        }
    }
    if (total == 0) {
        throw DegenerateCurve("no citations at offsets >= 1 for " + curve.journal_id + " " +
                              std::to_string(curve.cohort_year));
    }
    std::int64_t cumulative = 0;
    for (int w = 1; w <= last; ++w) {
        for (const auto& [offset, count] : curve.counts_by_offset) {
            if (offset == w) {
                cumulative += count;
            }
        }
        if (static_cast<double>(cumulative) + 1e-9 >= coverage_target * static_cast<double>(total)) {
            return w;
        }
    }
    return last;
}

}  // namespace garfield
