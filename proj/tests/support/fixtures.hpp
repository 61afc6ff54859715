#ifndef GARFIELD_TESTS_FIXTURES_HPP
#define GARFIELD_TESTS_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "garfield/corpus.hpp"

namespace fixtures {

using garfield::Corpus;
using garfield::DocType;
using garfield::DocumentRecord;
using garfield::JournalRecord;
using garfield::RawReference;

std::filesystem::path fixture_dir();
std::filesystem::path m1_journals();
std::filesystem::path m1_documents();
Corpus m1();

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

JournalRecord journal(std::string id, std::string title, int commenced, std::vector<std::pair<int, int>> coverage = {},
                      std::vector<std::string> issns = {});

DocumentRecord document(std::string id, std::string journal_id, int year, DocType type,
                        std::optional<int> volume = std::nullopt, std::optional<std::string> page = std::nullopt,
                        std::optional<std::string> doi = std::nullopt);

RawReference reference(std::string work, std::optional<int> year, std::optional<int> volume = std::nullopt,
                       std::optional<std::string> page = std::nullopt, std::optional<std::string> doi = std::nullopt);

/// Appends `ref` to `doc`, setting its ref_index.
void cite(DocumentRecord& doc, RawReference ref);

/// Journal "World J Gastroenterol" (WJG) suspended in 2005: 10 articles a
/// year 2006-2009, none for 2005, and 50 references from 2010 to its 2005-2009
/// volumes, 10 per year.
Corpus suspension_fixture();

/// OLD ("Old Title", 10 articles 2008) renamed to NEW ("New Title", 2
/// articles 2009), sharing an ISSN. In 2010 OLD's papers receive 8 verified
/// citations (one of them from a NEW paper) and NEW's receive 4.
Corpus rename_fixture();

struct RandomOptions {
    std::size_t max_documents = 50;
    /// Every reference carries a canonical title and correct locator fields.
    bool clean = false;
};

/// Small random corpus with rename lineages, coverage gaps, volume maps and
/// assorted reference corruption. Same seed, same corpus.
Corpus random_corpus(std::uint64_t seed, RandomOptions options = {});

/// Large corpus for throughput and determinism checks: `journals` journals
/// publishing 2001-2010 and roughly `references` references in total.
Corpus synthetic_corpus(std::uint64_t seed, std::size_t journals, std::size_t references);

}  // namespace fixtures

#endif  // GARFIELD_TESTS_FIXTURES_HPP
