#ifndef GARFIELD_CORPUS_HPP
#define GARFIELD_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace garfield {

struct TitlePeriod {
    std::string title;
    int from_year = 0;
    int to_year = 0;  // inclusive

    bool operator==(const TitlePeriod&) const = default;
};

struct YearRange {
    int from_year = 0;
    int to_year = 0;  // inclusive

    bool contains(int year) const { return year >= from_year && year <= to_year; }
    bool operator==(const YearRange&) const = default;
};

struct JournalRecord {
    std::string journal_id;
    std::vector<std::string> issns;
    std::vector<TitlePeriod> title_history;
    int commencement_year = 0;
    std::vector<YearRange> coverage;  // sorted, non-overlapping; gaps are suspensions
    std::optional<std::vector<std::pair<int, int>>> volume_year_map;  // (volume, year)

    /// Year lies before commencement, or in a gap between coverage intervals.
    /// Years after the last covered year are not treated as gaps. An empty
    /// coverage list means continuous coverage from commencement.
    bool in_coverage_gap(int year) const;
    std::optional<int> year_of_volume(int volume) const;

    bool operator==(const JournalRecord&) const = default;
};

struct Author {
    std::string surname;
    std::string initials;

    bool operator==(const Author&) const = default;
};

enum class DocType { Article, Review, Editorial, Letter, Correction, News, Other };

std::string_view to_string(DocType t);
std::optional<DocType> parse_doc_type(std::string_view s);

/// Articles and reviews are the citable items.
inline bool is_citable(DocType t) { return t == DocType::Article || t == DocType::Review; }

/// A reference as printed by the citing document. Stored verbatim.
struct RawReference {
    std::size_t ref_index = 0;
    std::optional<Author> cited_author;
    std::string cited_work;
    std::optional<int> cited_year;
    std::optional<int> cited_volume;
    std::optional<std::string> cited_page;
    std::optional<std::string> cited_doi;
    std::optional<std::string> cited_title;

    bool operator==(const RawReference&) const = default;
};

struct DocumentRecord {
    std::string doc_id;
    std::string journal_id;
    int year = 0;
    std::optional<int> volume;
    std::optional<std::string> first_page;  // first token of a page range
    std::optional<std::string> doi;
    std::string title;
    std::vector<Author> authors;
    DocType doc_type = DocType::Other;
    std::vector<RawReference> references;

    bool citable() const { return is_citable(doc_type); }
    bool operator==(const DocumentRecord&) const = default;
};

struct MalformedLine {
    std::string file;
    std::size_t line = 0;
    std::string reason;

    bool operator==(const MalformedLine&) const = default;
};

struct LoadReport {
    std::vector<MalformedLine> malformed;
};

/// Journals and documents plus derived lookups. Immutable once built; the
/// lookups are recomputed from the records by the constructor.
class Corpus {
public:
    Corpus() = default;
    Corpus(std::vector<JournalRecord> journals, std::vector<DocumentRecord> documents);

    const std::vector<JournalRecord>& journals() const { return journals_; }
    const std::vector<DocumentRecord>& documents() const { return documents_; }

    const JournalRecord* find_journal(std::string_view journal_id) const;
    const DocumentRecord* find_document(std::string_view doc_id) const;
    /// Documents carrying the DOI (normalised). More than one before dedupe.
    const std::vector<std::size_t>& documents_by_doi(std::string_view doi) const;
    /// Document indexes for a journal, ascending doc_id.
    const std::vector<std::size_t>& documents_of(std::string_view journal_id) const;
    const std::vector<std::size_t>& documents_by_year(std::string_view journal_id, int year) const;
    const std::vector<std::size_t>& documents_by_volume(std::string_view journal_id, int volume) const;
    const std::vector<std::size_t>& documents_by_locator(std::string_view journal_id, int year, int volume,
                                                         std::string_view page) const;
    /// Journals with any title normalising to `normalized_title`.
    const std::vector<std::size_t>& journals_by_title(const std::string& normalized_title) const;
    /// Journals whose title valid in `year` normalises to `normalized_title`.
    std::vector<std::size_t> journals_by_title_in_year(const std::string& normalized_title, int year) const;
    /// Distinct normalised titles (truncated to the index length) in ascending order.
    const std::vector<std::string>& normalized_titles() const { return title_keys_; }
    std::size_t title_index_length() const { return title_length_; }

    std::size_t reference_count() const;

    bool operator==(const Corpus& other) const {
        return journals_ == other.journals_ && documents_ == other.documents_;
    }

    /// Truncation length used by the title index. Matching code normalises
    /// with the same length.
    static constexpr std::size_t kDefaultTitleLength = 20;

    void rebuild_indexes(std::size_t title_length = kDefaultTitleLength);

private:
    std::vector<JournalRecord> journals_;
    std::vector<DocumentRecord> documents_;

    std::size_t title_length_ = kDefaultTitleLength;
    std::unordered_map<std::string, std::size_t> journal_pos_;
    std::unordered_map<std::string, std::size_t> doc_pos_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_doi_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_journal_;
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> by_year_;
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> by_volume_;
    std::map<std::tuple<std::string, int, int, std::string>, std::vector<std::size_t>> by_locator_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_title_;
    std::vector<std::string> title_keys_;
};

struct LoadedCorpus {
    Corpus corpus;
    LoadReport report;
};

/// Parses a JSON-lines journal file and a JSON-lines document file.
/// Malformed lines are reported and skipped; throws FileMissing when a path
/// does not exist and TooManyMalformed when more than 10% of the non-blank
/// lines in either file are rejected.
LoadedCorpus load_corpus(const std::filesystem::path& journals_path, const std::filesystem::path& documents_path);

/// Parse helpers exposed for tests and the round-trip writer.
JournalRecord parse_journal_line(std::string_view line);
DocumentRecord parse_document_line(std::string_view line);
std::string to_json_line(const JournalRecord& j);
std::string to_json_line(const DocumentRecord& d);

void write_corpus(const Corpus& corpus, const std::filesystem::path& journals_path,
                  const std::filesystem::path& documents_path);

constexpr double kMalformedTolerance = 0.10;

enum class Severity { Warning, Error };
std::string_view to_string(Severity s);

struct ValidationIssue {
    Severity severity = Severity::Warning;
    std::string code;
    std::string subject;
    std::string message;

    bool operator==(const ValidationIssue&) const = default;
};

/// Report-only consistency checks, sorted by (subject, code, message).
/// Codes: PRE_COMMENCEMENT, COVERAGE_GAP, DUPLICATE_DOI, VOLUME_YEAR_MISMATCH.
std::vector<ValidationIssue> validate_corpus(const Corpus& corpus);

struct MergeGroup {
    std::string survivor;
    std::vector<std::string> merged;  // absorbed doc_ids, ascending
};

struct ConflictingCore {
    std::vector<std::string> doc_ids;  // ascending; left unmerged
    std::string detail;
};

struct MergeReport {
    std::vector<MergeGroup> merges;
    std::vector<ConflictingCore> conflicts;

    bool empty() const { return merges.empty() && conflicts.empty(); }
};

struct DedupeResult {
    Corpus corpus;
    MergeReport report;
};

/// Merges duplicate document records. Two records are duplicates when they
/// share a DOI, or share journal, year, volume and first-author surname
/// together with either the first page or the normalised title. Groups are
/// closed transitively. The survivor is the record with the most non-empty
/// fields (smallest doc_id on ties) and receives the concatenated reference
/// lists with exact duplicates removed. Groups whose members disagree on
/// doc_type are reported as conflicts and left untouched. Idempotent.
DedupeResult dedupe_documents(const Corpus& corpus);

}  // namespace garfield

#endif  // GARFIELD_CORPUS_HPP
