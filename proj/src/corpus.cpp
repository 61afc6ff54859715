#include "garfield/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "garfield/error.hpp"
#include "garfield/text.hpp"

namespace garfield {

using json = nlohmann::ordered_json;

namespace {

constexpr int kOpenEnd = 9999;

const std::vector<std::size_t> kEmpty;

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        throw SchemaError(std::string("missing required field '") + key + "'");
    }
    return *it;
}

const json* optional_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return nullptr;
    }
    return &*it;
}

int as_int(const json& v, const char* key) {
    if (!v.is_number_integer()) {
        throw SchemaError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

std::string as_string(const json& v, const char* key) {
    if (!v.is_string()) {
        throw SchemaError(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

const json& as_array(const json& v, const char* key) {
    if (!v.is_array()) {
        throw SchemaError(std::string("field '") + key + "' must be an array");
    }
    return v;
}

std::pair<int, int> int_pair(const json& v, const char* key) {
    if (!v.is_array() || v.size() != 2) {
        throw SchemaError(std::string("entries of '") + key + "' must be [a, b] pairs");
    }
    return {as_int(v[0], key), as_int(v[1], key)};
}

Author parse_author(const json& v) {
    if (v.is_string()) {
        // "MORROW JK" style
        std::string s = trim(v.get<std::string>());
        auto sp = s.rfind(' ');
        if (sp == std::string::npos) {
            return {s, ""};
        }
        return {s.substr(0, sp), s.substr(sp + 1)};
    }
    if (!v.is_object()) {
        throw SchemaError("author must be an object or string");
    }
    Author a;
    a.surname = as_string(require(v, "surname"), "surname");
    if (const auto* i = optional_field(v, "initials")) {
        a.initials = as_string(*i, "initials");
    }
    return a;
}

json author_json(const Author& a) {
    json j;
    j["surname"] = a.surname;
    j["initials"] = a.initials;
    return j;
}

RawReference parse_reference(const json& v, std::size_t index) {
    if (!v.is_object()) {
        throw SchemaError("reference must be an object");
    }
    RawReference r;
    r.ref_index = index;
    r.cited_work = as_string(require(v, "cited_work"), "cited_work");
    if (trim(r.cited_work).empty()) {
        throw SchemaError("reference " + std::to_string(index) + " has empty cited_work");
    }
    if (const auto* a = optional_field(v, "cited_author")) {
        r.cited_author = parse_author(*a);
    }
    if (const auto* y = optional_field(v, "cited_year")) {
        r.cited_year = as_int(*y, "cited_year");
    }
    if (const auto* vol = optional_field(v, "cited_volume")) {
        r.cited_volume = as_int(*vol, "cited_volume");
    }
    if (const auto* p = optional_field(v, "cited_page")) {
        r.cited_page = as_string(*p, "cited_page");
    }
    if (const auto* d = optional_field(v, "cited_doi")) {
        r.cited_doi = as_string(*d, "cited_doi");
    }
    if (const auto* t = optional_field(v, "cited_title")) {
        r.cited_title = as_string(*t, "cited_title");
    }
    return r;
}

json reference_json(const RawReference& r) {
    json j;
    if (r.cited_author) {
        j["cited_author"] = author_json(*r.cited_author);
    }
    j["cited_work"] = r.cited_work;
    if (r.cited_year) {
        j["cited_year"] = *r.cited_year;
    }
    if (r.cited_volume) {
        j["cited_volume"] = *r.cited_volume;
    }
    if (r.cited_page) {
        j["cited_page"] = *r.cited_page;
    }
    if (r.cited_doi) {
        j["cited_doi"] = *r.cited_doi;
    }
    if (r.cited_title) {
        j["cited_title"] = *r.cited_title;
    }
    return j;
}

json parse_json(std::string_view line) {
    try {
        auto j = json::parse(line);
        if (!j.is_object()) {
            throw SchemaError("record is not a JSON object");
        }
        return j;
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

void check_journal(const JournalRecord& j) {
    if (j.journal_id.empty()) {
        throw SchemaError("empty journal_id");
    }
    auto titles = j.title_history;
    std::sort(titles.begin(), titles.end(), [](const auto& a, const auto& b) { return a.from_year < b.from_year; });
    for (std::size_t i = 0; i < titles.size(); ++i) {
        if (titles[i].to_year < titles[i].from_year) {
            throw SchemaError("title period ends before it starts");
        }
        if (titles[i].from_year < j.commencement_year) {
            throw SchemaError("title period starts before commencement_year");
        }
        if (i > 0 && titles[i].from_year <= titles[i - 1].to_year) {
            throw SchemaError("overlapping title_history periods");
        }
    }
    for (std::size_t i = 0; i < j.coverage.size(); ++i) {
        if (j.coverage[i].to_year < j.coverage[i].from_year) {
            throw SchemaError("coverage interval ends before it starts");
        }
        if (i > 0 && j.coverage[i].from_year <= j.coverage[i - 1].to_year) {
            throw SchemaError("coverage intervals must be sorted and non-overlapping");
        }
    }
    if (j.volume_year_map) {
        std::set<int> seen;
        for (const auto& [vol, year] : *j.volume_year_map) {
            if (!seen.insert(vol).second) {
                throw SchemaError("volume " + std::to_string(vol) + " mapped to more than one year");
            }
        }
    }
}

template <typename Parse, typename Accept>
std::size_t read_lines(const std::filesystem::path& path, const std::string& label, LoadReport& report, Parse parse,
                       Accept accept) {
    if (!std::filesystem::exists(path)) {
        throw FileMissing("file not found: " + path.string());
    }
    std::ifstream in(path);
    if (!in) {
        throw FileMissing("cannot open: " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    std::size_t nonblank = 0;
    std::size_t bad = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        ++nonblank;
        try {
            accept(parse(line));
        } catch (const SchemaError& e) {
            ++bad;
            report.malformed.push_back({label, line_no, e.what()});
        }
    }
    if (nonblank > 0 && static_cast<double>(bad) > kMalformedTolerance * static_cast<double>(nonblank)) {
        throw TooManyMalformed(label + ": " + std::to_string(bad) + " of " + std::to_string(nonblank) +
                               " lines malformed");
    }
    return nonblank;
}

}  // namespace

bool JournalRecord::in_coverage_gap(int year) const {
    if (year < commencement_year) {
        return true;
    }
    if (coverage.empty()) {
        return false;
    }
    if (year > coverage.back().to_year) {
        return false;
    }
    return std::none_of(coverage.begin(), coverage.end(), [year](const YearRange& r) { return r.contains(year); });
}

std::optional<int> JournalRecord::year_of_volume(int volume) const {
    if (!volume_year_map) {
        return std::nullopt;
    }
    for (const auto& [vol, year] : *volume_year_map) {
        if (vol == volume) {
            return year;
        }
    }
    return std::nullopt;
}

std::string_view to_string(DocType t) {
    switch (t) {
        case DocType::Article: return "article";
        case DocType::Review: return "review";
        case DocType::Editorial: return "editorial";
        case DocType::Letter: return "letter";
        case DocType::Correction: return "correction";
        case DocType::News: return "news";
        case DocType::Other: return "other";
    }
    return "other";
}

std::optional<DocType> parse_doc_type(std::string_view s) {
    static const std::pair<std::string_view, DocType> kTypes[] = {
        {"article", DocType::Article},       {"review", DocType::Review}, {"editorial", DocType::Editorial},
        {"letter", DocType::Letter},         {"correction", DocType::Correction},
        {"news", DocType::News},             {"other", DocType::Other},
    };
    for (const auto& [name, type] : kTypes) {
        if (name == s) {
            return type;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

JournalRecord parse_journal_line(std::string_view line) {
    auto v = parse_json(line);
    JournalRecord j;
    j.journal_id = as_string(require(v, "journal_id"), "journal_id");
    if (const auto* issns = optional_field(v, "issns")) {
        for (const auto& s : as_array(*issns, "issns")) {
            j.issns.push_back(as_string(s, "issns"));
        }
    }
    for (const auto& t : as_array(require(v, "title_history"), "title_history")) {
        if (!t.is_object()) {
            throw SchemaError("title_history entries must be objects");
        }
        TitlePeriod p;
        p.title = as_string(require(t, "title"), "title");
        p.from_year = as_int(require(t, "from"), "from");
        const auto* to = optional_field(t, "to");
        p.to_year = to ? as_int(*to, "to") : kOpenEnd;
        j.title_history.push_back(std::move(p));
    }
    if (j.title_history.empty()) {
        throw SchemaError("title_history is empty");
    }
    j.commencement_year = as_int(require(v, "commencement_year"), "commencement_year");
    for (const auto& c : as_array(require(v, "coverage"), "coverage")) {
        auto [from, to] = int_pair(c, "coverage");
        j.coverage.push_back({from, to});
    }
    if (const auto* m = optional_field(v, "volume_year_map")) {
        std::vector<std::pair<int, int>> map;
        for (const auto& e : as_array(*m, "volume_year_map")) {
            map.push_back(int_pair(e, "volume_year_map"));
        }
        j.volume_year_map = std::move(map);
    }
    check_journal(j);
    return j;
}

DocumentRecord parse_document_line(std::string_view line) {
    auto v = parse_json(line);
    DocumentRecord d;
    d.doc_id = as_string(require(v, "doc_id"), "doc_id");
    if (d.doc_id.empty()) {
        throw SchemaError("empty doc_id");
    }
    d.journal_id = as_string(require(v, "journal_id"), "journal_id");
    d.year = as_int(require(v, "year"), "year");
    if (const auto* vol = optional_field(v, "volume")) {
        d.volume = as_int(*vol, "volume");
    }
    if (const auto* p = optional_field(v, "first_page")) {
        std::string page = as_string(*p, "first_page");
        auto dash = page.find('-');
        page = trim(dash == std::string::npos ? page : page.substr(0, dash));
        if (!page.empty()) {
            d.first_page = page;
        }
    }
    if (const auto* doi = optional_field(v, "doi")) {
        std::string s = as_string(*doi, "doi");
        if (!trim(s).empty()) {
            d.doi = s;
        }
    }
    d.title = as_string(require(v, "title"), "title");
    for (const auto& a : as_array(require(v, "authors"), "authors")) {
        d.authors.push_back(parse_author(a));
    }
    auto type_name = as_string(require(v, "doc_type"), "doc_type");
    auto type = parse_doc_type(type_name);
    if (!type) {
        throw SchemaError("unknown doc_type '" + type_name + "'");
    }
    d.doc_type = *type;
    if (const auto* refs = optional_field(v, "references")) {
        std::size_t i = 0;
        for (const auto& r : as_array(*refs, "references")) {
            d.references.push_back(parse_reference(r, i++));
        }
    }
    return d;
}

std::string to_json_line(const JournalRecord& j) {
    json v;
    v["journal_id"] = j.journal_id;
    v["issns"] = j.issns;
    json titles = json::array();
    for (const auto& t : j.title_history) {
        json e;
        e["title"] = t.title;
        e["from"] = t.from_year;
        e["to"] = t.to_year;
        titles.push_back(std::move(e));
    }
    v["title_history"] = std::move(titles);
    v["commencement_year"] = j.commencement_year;
    json cov = json::array();
    for (const auto& c : j.coverage) {
        cov.push_back({c.from_year, c.to_year});
    }
    v["coverage"] = std::move(cov);
    if (j.volume_year_map) {
        json m = json::array();
        for (const auto& [vol, year] : *j.volume_year_map) {
            m.push_back({vol, year});
        }
        v["volume_year_map"] = std::move(m);
    }
    return v.dump();
}

std::string to_json_line(const DocumentRecord& d) {
    json v;
    v["doc_id"] = d.doc_id;
    v["journal_id"] = d.journal_id;
    v["year"] = d.year;
    if (d.volume) {
        v["volume"] = *d.volume;
    }
    if (d.first_page) {
        v["first_page"] = *d.first_page;
    }
    if (d.doi) {
        v["doi"] = *d.doi;
    }
    v["title"] = d.title;
    json authors = json::array();
    for (const auto& a : d.authors) {
        authors.push_back(author_json(a));
    }
    v["authors"] = std::move(authors);
    v["doc_type"] = std::string(to_string(d.doc_type));
    json refs = json::array();
    for (const auto& r : d.references) {
        refs.push_back(reference_json(r));
    }
    v["references"] = std::move(refs);
    return v.dump();
}

Corpus::Corpus(std::vector<JournalRecord> journals, std::vector<DocumentRecord> documents)
    : journals_(std::move(journals)), documents_(std::move(documents)) {
    std::sort(journals_.begin(), journals_.end(),
              [](const auto& a, const auto& b) { return a.journal_id < b.journal_id; });
    std::sort(documents_.begin(), documents_.end(), [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
    rebuild_indexes(title_length_);
}

void Corpus::rebuild_indexes(std::size_t title_length) {
    title_length_ = title_length;
    journal_pos_.clear();
    doc_pos_.clear();
    by_doi_.clear();
    by_journal_.clear();
    by_year_.clear();
    by_volume_.clear();
    by_locator_.clear();
    by_title_.clear();
    title_keys_.clear();

    for (std::size_t i = 0; i < journals_.size(); ++i) {
        const auto& j = journals_[i];
        if (!journal_pos_.emplace(j.journal_id, i).second) {
            throw SchemaError("duplicate journal_id " + j.journal_id);
        }
        std::set<std::string> keys;
        for (const auto& t : j.title_history) {
            keys.insert(normalize_work_title(t.title, title_length_));
        }
        for (const auto& k : keys) {
            by_title_[k].push_back(i);
        }
    }
    for (const auto& [k, _] : by_title_) {
        title_keys_.push_back(k);
    }
    std::sort(title_keys_.begin(), title_keys_.end());

    for (std::size_t i = 0; i < documents_.size(); ++i) {
        const auto& d = documents_[i];
        if (!journal_pos_.count(d.journal_id)) {
            throw SchemaError("document " + d.doc_id + " references unknown journal " + d.journal_id);
        }
        if (!doc_pos_.emplace(d.doc_id, i).second) {
            throw SchemaError("duplicate doc_id " + d.doc_id);
        }
        if (d.doi) {
            by_doi_[normalize_doi(*d.doi)].push_back(i);
        }
        by_journal_[d.journal_id].push_back(i);
        by_year_[{d.journal_id, d.year}].push_back(i);
        if (d.volume) {
            by_volume_[{d.journal_id, *d.volume}].push_back(i);
            if (d.first_page) {
                by_locator_[{d.journal_id, d.year, *d.volume, normalize_page(*d.first_page)}].push_back(i);
            }
        }
    }
}

const JournalRecord* Corpus::find_journal(std::string_view journal_id) const {
    auto it = journal_pos_.find(std::string(journal_id));
    return it == journal_pos_.end() ? nullptr : &journals_[it->second];
}

const DocumentRecord* Corpus::find_document(std::string_view doc_id) const {
    auto it = doc_pos_.find(std::string(doc_id));
    return it == doc_pos_.end() ? nullptr : &documents_[it->second];
}

const std::vector<std::size_t>& Corpus::documents_by_doi(std::string_view doi) const {
    auto it = by_doi_.find(normalize_doi(doi));
    return it == by_doi_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::documents_of(std::string_view journal_id) const {
    auto it = by_journal_.find(std::string(journal_id));
    return it == by_journal_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::documents_by_year(std::string_view journal_id, int year) const {
    auto it = by_year_.find({std::string(journal_id), year});
    return it == by_year_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::documents_by_volume(std::string_view journal_id, int volume) const {
    auto it = by_volume_.find({std::string(journal_id), volume});
    return it == by_volume_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::documents_by_locator(std::string_view journal_id, int year, int volume,
                                                             std::string_view page) const {
    auto it = by_locator_.find({std::string(journal_id), year, volume, normalize_page(page)});
    return it == by_locator_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::journals_by_title(const std::string& normalized_title) const {
    auto it = by_title_.find(normalized_title);
    return it == by_title_.end() ? kEmpty : it->second;
}

std::vector<std::size_t> Corpus::journals_by_title_in_year(const std::string& normalized_title, int year) const {
    std::vector<std::size_t> out;
    for (auto i : journals_by_title(normalized_title)) {
        for (const auto& t : journals_[i].title_history) {
            if (year >= t.from_year && year <= t.to_year &&
                normalize_work_title(t.title, title_length_) == normalized_title) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

std::size_t Corpus::reference_count() const {
    std::size_t n = 0;
    for (const auto& d : documents_) {
        n += d.references.size();
    }
    return n;
}

LoadedCorpus load_corpus(const std::filesystem::path& journals_path, const std::filesystem::path& documents_path) {
    LoadReport report;
    std::vector<JournalRecord> journals;
    std::set<std::string> journal_ids;
    read_lines(journals_path, "journals", report, parse_journal_line, [&](JournalRecord j) {
        if (!journal_ids.insert(j.journal_id).second) {
            throw SchemaError("duplicate journal_id " + j.journal_id);
        }
        journals.push_back(std::move(j));
    });

    std::vector<DocumentRecord> documents;
    std::set<std::string> doc_ids;
    read_lines(documents_path, "documents", report, parse_document_line, [&](DocumentRecord d) {
        if (!journal_ids.count(d.journal_id)) {
            throw SchemaError("unknown journal_id " + d.journal_id);
        }
        if (!doc_ids.insert(d.doc_id).second) {
            throw SchemaError("duplicate doc_id " + d.doc_id);
        }
        documents.push_back(std::move(d));
    });

    return {Corpus(std::move(journals), std::move(documents)), std::move(report)};
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& journals_path,
                  const std::filesystem::path& documents_path) {
    std::ofstream jout(journals_path, std::ios::binary);
    for (const auto& j : corpus.journals()) {
        jout << to_json_line(j) << '\n';
    }
    std::ofstream dout(documents_path, std::ios::binary);
    for (const auto& d : corpus.documents()) {
        dout << to_json_line(d) << '\n';
    }
}

std::vector<ValidationIssue> validate_corpus(const Corpus& corpus) {
    std::vector<ValidationIssue> issues;
    for (const auto& d : corpus.documents()) {
        const auto* j = corpus.find_journal(d.journal_id);
        if (d.year < j->commencement_year) {
            issues.push_back({Severity::Warning, "PRE_COMMENCEMENT", d.doc_id,
                              "published " + std::to_string(d.year) + " but " + j->journal_id + " commenced " +
                                  std::to_string(j->commencement_year)});
        } else if (j->in_coverage_gap(d.year)) {
            issues.push_back({Severity::Warning, "COVERAGE_GAP", d.doc_id,
                              "published " + std::to_string(d.year) + " in a coverage gap of " + j->journal_id});
        }
        if (d.volume) {
            if (auto mapped = j->year_of_volume(*d.volume); mapped && *mapped != d.year) {
                issues.push_back({Severity::Warning, "VOLUME_YEAR_MISMATCH", d.doc_id,
                                  "volume " + std::to_string(*d.volume) + " belongs to " + std::to_string(*mapped) +
                                      ", document dated " + std::to_string(d.year)});
            }
        }
    }
    std::map<std::string, std::vector<std::string>> by_doi;
    for (const auto& d : corpus.documents()) {
        if (d.doi) {
            by_doi[normalize_doi(*d.doi)].push_back(d.doc_id);
        }
    }
    for (const auto& [doi, ids] : by_doi) {
        if (ids.size() < 2) {
            continue;
        }
        std::string list;
        for (const auto& id : ids) {
            list += (list.empty() ? "" : ";") + id;
        }
        issues.push_back({Severity::Warning, "DUPLICATE_DOI", ids.front(), "doi " + doi + " shared by " + list});
    }
    std::sort(issues.begin(), issues.end(), [](const auto& a, const auto& b) {
        return std::tie(a.subject, a.code, a.message) < std::tie(b.subject, b.code, b.message);
    });
    return issues;
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

int filled_fields(const DocumentRecord& d) {
    return static_cast<int>(d.volume.has_value()) + static_cast<int>(d.first_page.has_value()) +
           static_cast<int>(d.doi.has_value()) + static_cast<int>(!trim(d.title).empty()) +
           static_cast<int>(!d.authors.empty());
}

bool same_reference(const RawReference& a, const RawReference& b) {
    return a.cited_author == b.cited_author && a.cited_work == b.cited_work && a.cited_year == b.cited_year &&
           a.cited_volume == b.cited_volume && a.cited_page == b.cited_page && a.cited_doi == b.cited_doi &&
           a.cited_title == b.cited_title;
}

}  // namespace

DedupeResult dedupe_documents(const Corpus& corpus) {
    const auto& docs = corpus.documents();
    DisjointSets sets(docs.size());

    std::map<std::string, std::size_t> first_by_key;
    auto link = [&](std::string key, std::size_t i) {
        auto [it, inserted] = first_by_key.emplace(std::move(key), i);
        if (!inserted) {
            sets.unite(it->second, i);
        }
    };
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto& d = docs[i];
        if (d.doi) {
            link("doi\x1f" + normalize_doi(*d.doi), i);
        }
        if (d.volume && !d.authors.empty()) {
            std::string base = d.journal_id + '\x1f' + std::to_string(d.year) + '\x1f' + std::to_string(*d.volume) +
                               '\x1f' + upper(trim(d.authors.front().surname));
            if (d.first_page) {
                link("page\x1f" + base + '\x1f' + normalize_page(*d.first_page), i);
            }
            auto title = normalize_full_title(d.title);
            if (!title.empty()) {
                link("title\x1f" + base + '\x1f' + title, i);
            }
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        groups[sets.find(i)].push_back(i);
    }

    DedupeResult result;
    std::vector<DocumentRecord> out;
    out.reserve(docs.size());
    for (const auto& [root, members] : groups) {
        if (members.size() == 1) {
            out.push_back(docs[members.front()]);
            continue;
        }
        bool conflict = std::any_of(members.begin(), members.end(),
                                    [&](std::size_t m) { return docs[m].doc_type != docs[members.front()].doc_type; });
        if (conflict) {
            ConflictingCore c;
            std::string types;
            for (auto m : members) {
                c.doc_ids.push_back(docs[m].doc_id);
                out.push_back(docs[m]);
                types += (types.empty() ? "" : ";") + docs[m].doc_id + "=" + std::string(to_string(docs[m].doc_type));
            }
            c.detail = "doc_type disagreement: " + types;
            result.report.conflicts.push_back(std::move(c));
            continue;
        }
        // members are ascending by doc_id since docs are sorted
        std::size_t survivor = members.front();
        for (auto m : members) {
            if (filled_fields(docs[m]) > filled_fields(docs[survivor])) {
                survivor = m;
            }
        }
        DocumentRecord merged = docs[survivor];
        MergeGroup g;
        g.survivor = merged.doc_id;
        for (auto m : members) {
            if (m == survivor) {
                continue;
            }
            g.merged.push_back(docs[m].doc_id);
            for (const auto& r : docs[m].references) {
                merged.references.push_back(r);
            }
        }
        std::vector<RawReference> unique;
        for (auto& r : merged.references) {
            bool dup = std::any_of(unique.begin(), unique.end(), [&](const auto& u) { return same_reference(u, r); });
            if (!dup) {
                r.ref_index = unique.size();
                unique.push_back(std::move(r));
            }
        }
        merged.references = std::move(unique);
        out.push_back(std::move(merged));
        result.report.merges.push_back(std::move(g));
    }
    std::sort(result.report.merges.begin(), result.report.merges.end(),
              [](const auto& a, const auto& b) { return a.survivor < b.survivor; });
    std::sort(result.report.conflicts.begin(), result.report.conflicts.end(),
              [](const auto& a, const auto& b) { return a.doc_ids < b.doc_ids; });
    result.corpus = Corpus(corpus.journals(), std::move(out));
    return result;
}

}  // namespace garfield
