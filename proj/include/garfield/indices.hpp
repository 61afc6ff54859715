#ifndef GARFIELD_INDICES_HPP
#define GARFIELD_INDICES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "garfield/corpus.hpp"
#include "garfield/resolver.hpp"

namespace garfield {

enum class NumeratorMode { MM, AM, OneOne };
enum class DenominatorMode { CitableOnly, AllItems };
enum class SelfCitePolicy { Include, Exclude };
/// What to do with window years that fall in a coverage gap. `None` leaves
/// the raw counts untouched, which is how an index that ignores suspensions
/// behaves.
enum class SuspensionPolicy { OmitCitations, IncludeDocuments, None };
enum class RoundingPolicy { ThreeDecimal, OneDecimal, ErrorAware };

std::string_view to_string(NumeratorMode m);
std::string_view to_string(DenominatorMode m);
std::string_view to_string(SelfCitePolicy p);
std::string_view to_string(SuspensionPolicy p);
std::string_view to_string(RoundingPolicy p);

struct IndexVariantSpec {
    NumeratorMode numerator_mode = NumeratorMode::OneOne;
    DenominatorMode denominator_mode = DenominatorMode::CitableOnly;
    SelfCitePolicy self_cites = SelfCitePolicy::Include;
    int census_year = 0;
    int window_years = 2;
    SuspensionPolicy suspension_policy = SuspensionPolicy::OmitCitations;
    bool merge_renames = true;

    int first_cohort_year() const { return census_year - window_years; }
    int last_cohort_year() const { return census_year - 1; }
    bool in_window(int year) const { return year >= first_cohort_year() && year <= last_cohort_year(); }

    bool operator==(const IndexVariantSpec&) const = default;
};

/// A journal, or a rename lineage treated as one journal.
struct JournalScope {
    JournalRecord record;              // virtual record for a lineage
    std::vector<std::string> members;  // ascending journal_ids

    bool contains(std::string_view journal_id) const;
    const std::string& id() const { return record.journal_id; }
};

/// Unions title histories, coverage and volume maps of the given journals.
/// The virtual id joins member ids with '+'. Throws UnknownJournal, and
/// OverlapConflict when two members publish the same volume in the same year.
JournalScope merge_journal_history(const std::vector<std::string>& journal_ids, const Corpus& corpus);

/// Scope for one journal: itself, or with `merge_renames` every journal
/// linked to it through shared ISSNs. A lineage whose merge conflicts falls
/// back to the single journal.
JournalScope scope_of(const Corpus& corpus, std::string_view journal_id, bool merge_renames);

/// Every scope in the corpus, ascending by id.
std::vector<JournalScope> journal_scopes(const Corpus& corpus, bool merge_renames);

/// Corpus, links and the normalised cited works, prepared once and shared
/// by every index computation over them.
class CitationIndex {
public:
    struct Citation {
        std::size_t citing_doc;  // position in corpus.documents()
        std::size_t ref;
        const ResolvedLink* link;  // may be null when links were supplied partially
        const DocumentRecord* target;
    };

    CitationIndex(const Corpus& corpus, const std::vector<ResolvedLink>& links, ResolutionConfig cfg);

    const Corpus& corpus() const { return corpus_; }
    const ResolutionConfig& config() const { return cfg_; }
    const std::vector<Citation>& citations() const { return citations_; }
    const RawReference& reference(const Citation& c) const;
    const DocumentRecord& citing(const Citation& c) const { return corpus_.documents()[c.citing_doc]; }

    /// Citations whose normalised cited work equals `normalized_title`.
    const std::vector<std::size_t>& by_work(const std::string& normalized_title) const;
    /// Citations whose link targets a document of `journal_id`.
    const std::vector<std::size_t>& by_target_journal(const std::string& journal_id) const;
    /// Citations made by documents of `journal_id`.
    const std::vector<std::size_t>& by_citing_journal(const std::string& journal_id) const;

    bool counts_as_verified(MatchClass c) const;

private:
    const Corpus& corpus_;
    ResolutionConfig cfg_;
    std::vector<Citation> citations_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_work_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_target_journal_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_citing_journal_;
};

enum class RepairAction { DropCitations, IncludeDocuments };
std::string_view to_string(RepairAction a);

struct WindowRepair {
    int cohort_year = 0;
    RepairAction action = RepairAction::DropCitations;

    bool operator==(const WindowRepair&) const = default;
};

/// Repairs for window years lying in a coverage gap of the scope. Throws
/// MissingDocuments when IncludeDocuments is chosen but the corpus holds no
/// documents for a gap year.
std::vector<WindowRepair> check_window_consistency(const JournalScope& scope, const Corpus& corpus,
                                                   const IndexVariantSpec& spec);

struct CohortYear {
    int year = 0;
    std::int64_t cites = 0;
    std::int64_t docs = 0;
    bool counted = true;  // false when the year was dropped by a repair

    bool operator==(const CohortYear&) const = default;
};

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;

    bool operator==(const ConfidenceInterval&) const = default;
};

struct BootstrapConfig {
    std::size_t replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
};

struct IndexOptions {
    RoundingPolicy rounding = RoundingPolicy::ThreeDecimal;
    std::optional<BootstrapConfig> bootstrap;
    unsigned threads = 1;
};

struct IndexResult {
    std::string journal_id;
    IndexVariantSpec spec;
    std::int64_t numerator = 0;
    std::int64_t denominator = 0;
    std::optional<double> value;  // absent when the denominator is zero
    std::optional<ConfidenceInterval> ci;
    std::string display;
    std::vector<CohortYear> per_year_breakdown;
    std::vector<WindowRepair> repairs;
    /// Citation count per denominator document (ascending doc_id); sums to the numerator.
    std::vector<std::int64_t> per_document_counts;
};

std::int64_t compute_numerator(const JournalScope& scope, const CitationIndex& index, const IndexVariantSpec& spec);
std::int64_t compute_numerator(std::string_view journal_id, const CitationIndex& index, const IndexVariantSpec& spec);

/// Ids (into index.citations()) of the citations the numerator counts, ascending.
std::vector<std::size_t> numerator_citations(const JournalScope& scope, const CitationIndex& index,
                                             const IndexVariantSpec& spec);

std::int64_t compute_denominator(const JournalScope& scope, const Corpus& corpus, const IndexVariantSpec& spec);
std::int64_t compute_denominator(std::string_view journal_id, const Corpus& corpus, const IndexVariantSpec& spec);

/// Throws UndefinedIndex when the denominator is zero.
IndexResult compute_index(const JournalScope& scope, const CitationIndex& index, const IndexVariantSpec& spec,
                          const IndexOptions& options = {});
IndexResult compute_index(std::string_view journal_id, const CitationIndex& index, const IndexVariantSpec& spec,
                          const IndexOptions& options = {});
/// Same as compute_index, but a zero denominator yields a result with no
/// value and display "n/a".
IndexResult compute_index_or_undefined(const JournalScope& scope, const CitationIndex& index,
                                       const IndexVariantSpec& spec, const IndexOptions& options = {});

/// Index from bare counts, for reproducing published figures.
IndexResult index_from_counts(std::int64_t numerator, std::int64_t denominator,
                              RoundingPolicy rounding = RoundingPolicy::ThreeDecimal);

/// Percentile bootstrap of the mean. Replicate r draws from an mt19937_64
/// seeded with seed + r, so the interval does not depend on `threads`.
/// Throws EmptyCohort on an empty sample.
ConfidenceInterval bootstrap_ci(std::span<const std::int64_t> per_document_counts, double level,
                                std::size_t replicates, std::uint64_t seed, unsigned threads = 1);

/// Number of decimals the policy shows. ErrorAware stops at the first digit
/// whose half unit is smaller than the interval half-width (0 to 3 decimals);
/// without an interval it shows one decimal.
int display_decimals(RoundingPolicy policy, const std::optional<ConfidenceInterval>& ci = std::nullopt);

/// Half-away-from-zero rounding of the shortest decimal form of `value`.
std::string round_display(double value, RoundingPolicy policy,
                          const std::optional<ConfidenceInterval>& ci = std::nullopt);
/// Exact rounding of numerator/denominator.
std::string round_display(std::int64_t numerator, std::int64_t denominator, RoundingPolicy policy,
                          const std::optional<ConfidenceInterval>& ci = std::nullopt);

struct RankedJournal {
    int rank = 0;  // 0 for undefined indices, which sort last
    std::string journal_id;
    std::string display;

    bool operator==(const RankedJournal&) const = default;
};

/// Competition ranking ("1224") on the rounded display value, descending.
/// Throws MixedSpecs if the results were computed under different specs.
std::vector<RankedJournal> rank_journals(std::span<const IndexResult> results, RoundingPolicy policy);

}  // namespace garfield

#endif  // GARFIELD_INDICES_HPP
