#ifndef GARFIELD_RESOLVER_HPP
#define GARFIELD_RESOLVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "garfield/corpus.hpp"

namespace garfield {

/// The four combinations of (in)complete and (in)correct citation links.
enum class MatchClass { CompleteCorrect, IncompleteCorrect, Faulty, Ghost };

std::string_view to_string(MatchClass c);
std::optional<MatchClass> parse_match_class(std::string_view s);

inline bool is_verified(MatchClass c) { return c == MatchClass::CompleteCorrect || c == MatchClass::IncompleteCorrect; }

enum class Evidence { Exact, Near, Mismatch, Absent };

std::string_view to_string(Evidence e);

/// Which resolution step produced the link.
enum class Rule { Doi, Exact, Fuzzy, Contradiction, None };

std::string_view to_string(Rule r);

struct FieldEvidence {
    Evidence doi = Evidence::Absent;
    Evidence title = Evidence::Absent;
    Evidence year = Evidence::Absent;
    Evidence volume = Evidence::Absent;
    Evidence page = Evidence::Absent;
    Rule rule = Rule::None;
    /// Candidates sharing the winning score; > 1 means the tie was broken by doc_id.
    std::size_t tied_candidates = 0;

    bool operator==(const FieldEvidence&) const = default;
};

struct ResolvedLink {
    std::string citing_doc_id;
    std::size_t ref_index = 0;
    std::optional<std::string> target_doc_id;
    std::optional<std::string> target_journal_id;
    MatchClass match_class = MatchClass::Ghost;
    double score = 0.0;
    FieldEvidence evidence;

    bool operator==(const ResolvedLink&) const = default;
};

struct ResolutionConfig {
    std::size_t title_edit_distance_max = 2;
    std::size_t truncation_length = 20;
    bool count_incomplete_in_G11 = true;
    bool doi_overrides_fields = true;
};

/// Field weights for the link score. Absent fields drop out and the
/// remaining weights are renormalised.
struct ScoreWeights {
    static constexpr double doi = 0.4;
    static constexpr double title = 0.25;
    static constexpr double year = 0.15;
    static constexpr double volume = 0.1;
    static constexpr double page = 0.1;
};

/// Weighted fraction of present fields that match (exact or near).
double link_score(const FieldEvidence& e);

/// Precomputed title matcher for one corpus and configuration. Caches the
/// normalised form of each journal title at the configured truncation.
class Resolver {
public:
    Resolver(const Corpus& corpus, ResolutionConfig cfg);

    ResolvedLink resolve(const DocumentRecord& citing, const RawReference& ref) const;

    const ResolutionConfig& config() const { return cfg_; }

    /// Journals whose normalised title is within the configured edit
    /// distance of `normalized_work`, paired with the smallest distance.
    std::vector<std::pair<std::size_t, std::size_t>> matching_journals(const std::string& normalized_work) const;

private:
    struct TitleEntry {
        std::string normalized;
        std::vector<std::size_t> journals;
    };

    std::size_t title_distance(const JournalRecord& journal, const std::string& normalized_work) const;

    const Corpus& corpus_;
    ResolutionConfig cfg_;
    std::vector<TitleEntry> titles_;
    std::vector<std::vector<std::string>> journal_titles_;  // per journal index
};

ResolvedLink resolve_reference(const DocumentRecord& citing, const RawReference& ref, const Corpus& corpus,
                               const ResolutionConfig& cfg);

/// One link per (document, reference), sorted by (citing_doc_id, ref_index).
/// `threads` == 0 uses the hardware concurrency. The output does not depend
/// on the thread count.
std::vector<ResolvedLink> resolve_corpus(const Corpus& corpus, const ResolutionConfig& cfg, unsigned threads = 1);

}  // namespace garfield

#endif  // GARFIELD_RESOLVER_HPP
