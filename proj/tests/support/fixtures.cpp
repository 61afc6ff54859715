#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <unistd.h>

#ifndef GARFIELD_FIXTURE_DIR
#error "GARFIELD_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

using garfield::Author;
using garfield::TitlePeriod;
using garfield::YearRange;

std::filesystem::path fixture_dir() { return GARFIELD_FIXTURE_DIR; }
std::filesystem::path m1_journals() { return fixture_dir() / "m1" / "journals.jsonl"; }
std::filesystem::path m1_documents() { return fixture_dir() / "m1" / "documents.jsonl"; }

Corpus m1() { return garfield::load_corpus(m1_journals(), m1_documents()).corpus; }

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto candidate = base / ("garfield-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        if (std::filesystem::create_directories(candidate)) {
            path_ = candidate;
            return;
        }
    }
    throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

JournalRecord journal(std::string id, std::string title, int commenced, std::vector<std::pair<int, int>> coverage,
                      std::vector<std::string> issns) {
    JournalRecord j;
    j.journal_id = std::move(id);
    j.issns = std::move(issns);
    j.title_history.push_back(TitlePeriod{std::move(title), commenced, 9999});
    j.commencement_year = commenced;
    for (auto [from, to] : coverage) {
        j.coverage.push_back(YearRange{from, to});
    }
    return j;
}

DocumentRecord document(std::string id, std::string journal_id, int year, DocType type, std::optional<int> volume,
                        std::optional<std::string> page, std::optional<std::string> doi) {
    DocumentRecord d;
    d.doc_id = std::move(id);
    d.journal_id = std::move(journal_id);
    d.year = year;
    d.volume = volume;
    d.first_page = std::move(page);
    d.doi = std::move(doi);
    d.title = "Paper " + d.doc_id;
    d.authors.push_back(Author{"Author" + d.doc_id, "A"});
    d.doc_type = type;
    return d;
}

RawReference reference(std::string work, std::optional<int> year, std::optional<int> volume,
                       std::optional<std::string> page, std::optional<std::string> doi) {
    RawReference r;
    r.cited_work = std::move(work);
    r.cited_year = year;
    r.cited_volume = volume;
    r.cited_page = std::move(page);
    r.cited_doi = std::move(doi);
    return r;
}

void cite(DocumentRecord& doc, RawReference ref) {
    ref.ref_index = doc.references.size();
    doc.references.push_back(std::move(ref));
}

Corpus suspension_fixture() {
    std::vector<JournalRecord> journals{
        journal("WJG", "World J Gastroenterol", 1995, {{1995, 2004}, {2006, 2011}}),
        journal("CIT", "Citing Letters", 1990, {{1990, 2011}}),
    };
    std::vector<DocumentRecord> docs;
    for (int year = 2006; year <= 2009; ++year) {
        for (int i = 0; i < 10; ++i) {
            docs.push_back(document("w" + std::to_string(year) + "-" + std::to_string(i), "WJG", year,
                                    DocType::Article, year - 1994, std::to_string(100 + i)));
        }
    }
    auto citer = document("c1", "CIT", 2010, DocType::Article);
    for (int year = 2005; year <= 2009; ++year) {
        for (int i = 0; i < 10; ++i) {
            cite(citer, reference("World J Gastroenterol", year, year - 1994, std::to_string(100 + i)));
        }
    }
    docs.push_back(std::move(citer));
    return Corpus(std::move(journals), std::move(docs));
}

Corpus rename_fixture() {
    auto old_j = journal("OLD", "Old Title", 1980, {{1980, 2008}}, {"1234-5678"});
    old_j.title_history.front().to_year = 2008;
    auto new_j = journal("NEW", "New Title", 2009, {{2009, 2011}}, {"1234-5678", "8765-4321"});
    std::vector<JournalRecord> journals{old_j, new_j, journal("OTH", "Other Journal", 1990, {{1990, 2011}})};

    std::vector<DocumentRecord> docs;
    for (int i = 0; i < 10; ++i) {
        docs.push_back(document("old" + std::to_string(i), "OLD", 2008, DocType::Article, 28, std::to_string(10 * i + 1)));
    }
    for (int i = 0; i < 2; ++i) {
        docs.push_back(document("new" + std::to_string(i), "NEW", 2009, DocType::Article, 1, std::to_string(10 * i + 1)));
    }
    auto other = document("oth1", "OTH", 2010, DocType::Article);
    for (int i = 0; i < 7; ++i) {
        cite(other, reference("Old Title", 2008, 28, std::to_string(10 * i + 1)));
    }
    for (int i = 0; i < 4; ++i) {
        cite(other, reference("New Title", 2009, 1, std::to_string(10 * (i % 2) + 1)));
    }
    auto self = document("new9", "NEW", 2010, DocType::Article, 2, "1");
    cite(self, reference("Old Title", 2008, 28, "71"));
    docs.push_back(std::move(other));
    docs.push_back(std::move(self));
    return Corpus(std::move(journals), std::move(docs));
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    // Uniform in [lo, hi] without relying on a library distribution, so the
    // generated corpora are identical on every standard library.
    int uniform(int lo, int hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }
    bool chance(int percent) { return uniform(1, 100) <= percent; }
    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

private:
    std::mt19937_64 gen_;
};

const std::vector<std::string> kTitles{
    "Acta Alpha",         "Beta Bulletin",       "Forest Science",    "Annals of Ecology",
    "Journal of Botany",  "Marine Chemistry",    "Soil Dynamics",     "Review of Physics",
};

DocType random_type(Rng& rng) {
    int r = rng.uniform(1, 100);
    if (r <= 50) return DocType::Article;
    if (r <= 65) return DocType::Review;
    if (r <= 80) return DocType::Editorial;
    if (r <= 90) return DocType::Letter;
    if (r <= 95) return DocType::Correction;
    return DocType::News;
}

std::string typo(std::string s, Rng& rng) {
    if (s.size() < 3) {
        return s + "x";
    }
    auto i = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(s.size()) - 2));
    switch (rng.uniform(0, 2)) {
        case 0: std::swap(s[i], s[i + 1]); break;
        case 1: s[i] = s[i] == 'q' ? 'z' : 'q'; break;
        default: s.erase(i, 1); break;
    }
    return s;
}

std::string title_at(const JournalRecord& j, int year) {
    for (const auto& p : j.title_history) {
        if (year >= p.from_year && year <= p.to_year) {
            return p.title;
        }
    }
    return j.title_history.front().title;
}

// A reference to `target` as a careless author might print it.
RawReference corrupt_reference(const DocumentRecord& target, const JournalRecord& journal,
                               const std::vector<DocumentRecord>& docs, Rng& rng) {
    auto ref = reference(title_at(journal, target.year), target.year, target.volume, target.first_page,
                         rng.chance(40) ? target.doi : std::nullopt);
    int kind = rng.uniform(1, 100);
    if (kind <= 30) {
        // verbatim
    } else if (kind <= 45) {
        ref.cited_work = typo(ref.cited_work, rng);
    } else if (kind <= 52) {
        ref.cited_work = rng.chance(50) ? ref.cited_work + "." : std::string(" ") + ref.cited_work;
        for (auto& c : ref.cited_work) {
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    } else if (kind <= 60) {
        ref.cited_page = std::to_string(rng.uniform(500, 999));
    } else if (kind <= 68) {
        if (rng.chance(50)) {
            ref.cited_volume.reset();
        } else {
            ref.cited_page.reset();
        }
    } else if (kind <= 76) {
        *ref.cited_year += rng.chance(50) ? 1 : -1;
    } else if (kind <= 82) {
        const auto& other = rng.pick(docs);
        ref.cited_doi = other.doi ? other.doi : std::optional<std::string>("10.999/none");
    } else if (kind <= 90) {
        ref.cited_work = rng.chance(30) ? "TEST" : "Unknown Quarterly " + std::to_string(rng.uniform(1, 9));
        ref.cited_doi.reset();
    } else {
        // a year the journal did not publish, or a volume from another year
        if (rng.chance(50)) {
            ref.cited_year = journal.commencement_year - rng.uniform(1, 3);
        } else if (ref.cited_volume) {
            *ref.cited_volume += rng.uniform(1, 3);
        }
        ref.cited_doi.reset();
    }
    return ref;
}

}  // namespace

Corpus random_corpus(std::uint64_t seed, RandomOptions options) {
    Rng rng(seed);
    auto titles = kTitles;
    std::vector<JournalRecord> journals;
    int n_journals = rng.uniform(2, 4);
    for (int j = 0; j < n_journals; ++j) {
        auto title = titles[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(titles.size()) - 1))];
        titles.erase(std::find(titles.begin(), titles.end(), title));
        int commenced = rng.uniform(1998, 2006);
        std::vector<std::pair<int, int>> coverage{{commenced, 2011}};
        if (rng.chance(35)) {
            int gap = rng.uniform(std::max(commenced + 1, 2006), 2009);
            coverage = {{commenced, gap - 1}, {gap + 1, 2011}};
        }
        std::string issn = std::to_string(1000 + j) + "-0000";
        journals.push_back(journal("J" + std::to_string(j), title, commenced, coverage, {issn}));
        if (rng.chance(50)) {
            std::vector<std::pair<int, int>> map;
            for (int y = commenced; y <= 2011; ++y) {
                map.emplace_back(y - 1950 + 100 * j, y);
            }
            journals.back().volume_year_map = map;
        }
    }
    // occasionally the last journal continues the previous one under a new title
    if (n_journals >= 3 && rng.chance(40)) {
        auto& prev = journals[static_cast<std::size_t>(n_journals - 2)];
        auto& next = journals.back();
        int rename = rng.uniform(2006, 2009);
        prev.title_history.front().to_year = rename - 1;
        prev.coverage = {YearRange{prev.commencement_year, rename - 1}};
        if (prev.commencement_year > rename - 1) {
            prev.commencement_year = rename - 1;
            prev.title_history.front().from_year = rename - 1;
            prev.coverage = {YearRange{rename - 1, rename - 1}};
            if (prev.volume_year_map) {
                prev.volume_year_map->clear();
                prev.volume_year_map->emplace_back(rename - 1 - 1950 + 100 * (n_journals - 2), rename - 1);
            }
        } else if (prev.volume_year_map) {
            auto& map = *prev.volume_year_map;
            map.erase(std::remove_if(map.begin(), map.end(), [&](const auto& p) { return p.second >= rename; }),
                      map.end());
        }
        next.issns.push_back(prev.issns.front());
        next.commencement_year = rename;
        next.title_history.front().from_year = rename;
        next.coverage = {YearRange{rename, 2011}};
        if (next.volume_year_map) {
            auto& map = *next.volume_year_map;
            map.erase(std::remove_if(map.begin(), map.end(), [&](const auto& p) { return p.second < rename; }),
                      map.end());
        }
    }

    auto covered_years = [](const JournalRecord& j) {
        std::vector<int> years;
        for (int y = 2005; y <= 2010; ++y) {
            if (!j.in_coverage_gap(y)) {
                years.push_back(y);
            }
        }
        return years;
    };

    std::vector<DocumentRecord> docs;
    int n_docs = rng.uniform(5, static_cast<int>(std::max<std::size_t>(options.max_documents, 5)));
    for (int i = 0; i < n_docs; ++i) {
        const auto& j = journals[static_cast<std::size_t>(rng.uniform(0, n_journals - 1))];
        auto years = covered_years(j);
        if (years.empty()) {
            continue;
        }
        int year = rng.chance(30) && years.back() == 2010 ? 2010 : rng.pick(years);
        std::optional<int> volume;
        if (auto v = j.year_of_volume(year - 1950 + 100 * static_cast<int>(&j - journals.data())); v) {
            volume = year - 1950 + 100 * static_cast<int>(&j - journals.data());
        } else if (rng.chance(85)) {
            volume = year - 1950 + 100 * static_cast<int>(&j - journals.data());
        }
        std::optional<std::string> page;
        if (rng.chance(90)) {
            page = std::to_string(rng.uniform(1, 40));
        }
        std::optional<std::string> doi;
        if (rng.chance(50)) {
            doi = "10.9/d" + std::to_string(i);
        }
        char id[8];
        std::snprintf(id, sizeof id, "d%02d", i);
        docs.push_back(document(id, j.journal_id, year, random_type(rng), volume, page, doi));
    }

    for (auto& citing : docs) {
        int n_refs = rng.uniform(0, 6);
        for (int r = 0; r < n_refs; ++r) {
            const auto target = rng.pick(docs);
            const auto& tj = *std::find_if(journals.begin(), journals.end(),
                                           [&](const JournalRecord& j) { return j.journal_id == target.journal_id; });
            if (options.clean) {
                cite(citing, reference(title_at(tj, target.year), target.year, target.volume, target.first_page,
                                       rng.chance(40) ? target.doi : std::nullopt));
            } else {
                cite(citing, corrupt_reference(target, tj, docs, rng));
            }
        }
    }
    return Corpus(std::move(journals), std::move(docs));
}

Corpus synthetic_corpus(std::uint64_t seed, std::size_t n_journals, std::size_t n_references) {
    Rng rng(seed);
    std::vector<JournalRecord> journals;
    const std::string letters = "BCDFGHJKLMNPRSTVWZ";
    const std::string vowels = "AEIOU";
    for (std::size_t j = 0; j < n_journals; ++j) {
        std::string word;
        for (int k = 0; k < 4; ++k) {
            word += letters[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(letters.size()) - 1))];
            word += vowels[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(vowels.size()) - 1))];
        }
        char id[8];
        std::snprintf(id, sizeof id, "S%03zu", j);
        journals.push_back(journal(id, "Annals of " + word, 1990, {{1990, 2011}}, {std::to_string(j) + "-SYN"}));
        std::vector<std::pair<int, int>> map;
        for (int y = 1990; y <= 2011; ++y) {
            map.emplace_back(y - 1980, y);
        }
        journals.back().volume_year_map = map;
    }

    constexpr std::size_t kRefsPerDoc = 10;
    const std::size_t n_docs = std::max<std::size_t>(1, n_references / kRefsPerDoc);
    std::vector<DocumentRecord> docs;
    docs.reserve(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) {
        const auto& j = journals[i % n_journals];
        int year = 2001 + static_cast<int>((i / n_journals) % 10);
        char id[12];
        std::snprintf(id, sizeof id, "x%07zu", i);
        docs.push_back(document(id, j.journal_id, year, random_type(rng), year - 1980,
                                std::to_string(1 + (i / n_journals / 10) * 7 % 900),
                                rng.chance(50) ? std::optional<std::string>("10.77/" + std::string(id)) : std::nullopt));
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (std::size_t r = 0; r < kRefsPerDoc; ++r) {
            const auto& target = docs[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(docs.size()) - 1))];
            const auto& tj = journals[static_cast<std::size_t>(std::stoi(target.journal_id.substr(1)))];
            cite(docs[i], corrupt_reference(target, tj, docs, rng));
        }
    }
    return Corpus(std::move(journals), std::move(docs));
}

}  // namespace fixtures
