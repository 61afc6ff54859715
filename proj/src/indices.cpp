#include "garfield/indices.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include "garfield/error.hpp"
#include "garfield/text.hpp"

namespace garfield {

std::string_view to_string(NumeratorMode m) {
    switch (m) {
        case NumeratorMode::MM: return "mm";
        case NumeratorMode::AM: return "am";
        case NumeratorMode::OneOne: return "oneone";
    }
    return "mm";
}

std::string_view to_string(DenominatorMode m) { return m == DenominatorMode::CitableOnly ? "citable" : "all"; }

std::string_view to_string(SelfCitePolicy p) { return p == SelfCitePolicy::Include ? "include" : "exclude"; }

std::string_view to_string(SuspensionPolicy p) {
    switch (p) {
        case SuspensionPolicy::OmitCitations: return "omit-cites";
        case SuspensionPolicy::IncludeDocuments: return "include-docs";
        case SuspensionPolicy::None: return "none";
    }
    return "none";
}

std::string_view to_string(RoundingPolicy p) {
    switch (p) {
        case RoundingPolicy::ThreeDecimal: return "3dp";
        case RoundingPolicy::OneDecimal: return "1dp";
        case RoundingPolicy::ErrorAware: return "error-aware";
    }
    return "3dp";
}

std::string_view to_string(RepairAction a) {
    return a == RepairAction::DropCitations ? "drop citations" : "include documents";
}

// ---------------------------------------------------------------------------
// Journal scopes

bool JournalScope::contains(std::string_view journal_id) const {
    return std::binary_search(members.begin(), members.end(), journal_id);
}

namespace {

std::vector<YearRange> merge_ranges(std::vector<YearRange> ranges) {
    std::sort(ranges.begin(), ranges.end(),
              [](const auto& a, const auto& b) { return a.from_year != b.from_year ? a.from_year < b.from_year : a.to_year < b.to_year; });
    std::vector<YearRange> out;
    for (const auto& r : ranges) {
        if (!out.empty() && r.from_year <= out.back().to_year + 1) {
            out.back().to_year = std::max(out.back().to_year, r.to_year);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

std::string issn_key(std::string_view issn) {
    std::string out;
    for (char c : issn) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

// Lineages as sorted lists of journal positions, ordered by first member.
std::vector<std::vector<std::size_t>> issn_lineages(const Corpus& corpus) {
    const auto& journals = corpus.journals();
    std::vector<std::size_t> parent(journals.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    std::map<std::string, std::size_t> first;
    for (std::size_t i = 0; i < journals.size(); ++i) {
        for (const auto& issn : journals[i].issns) {
            auto key = issn_key(issn);
            if (key.empty()) {
                continue;
            }
            auto [it, inserted] = first.emplace(key, i);
            if (!inserted) {
                auto a = find(it->second);
                auto b = find(i);
                if (a != b) {
                    parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < journals.size(); ++i) {
        groups[find(i)].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) {
        out.push_back(std::move(members));
    }
    return out;
}

JournalScope single_scope(const JournalRecord& j) { return {j, {j.journal_id}}; }

}  // namespace

JournalScope merge_journal_history(const std::vector<std::string>& journal_ids, const Corpus& corpus) {
    std::vector<std::string> ids = journal_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) {
        throw UnknownJournal("(empty lineage)");
    }
    std::vector<const JournalRecord*> members;
    for (const auto& id : ids) {
        const auto* j = corpus.find_journal(id);
        if (!j) {
            throw UnknownJournal(id);
        }
        members.push_back(j);
    }
    if (members.size() == 1) {
        return single_scope(*members.front());
    }

    std::map<std::pair<int, int>, std::string> published;  // (volume, year) -> member
    auto claim = [&](int volume, int year, const std::string& member) {
        auto [it, inserted] = published.emplace(std::make_pair(volume, year), member);
        if (!inserted && it->second != member) {
            throw OverlapConflict("volume " + std::to_string(volume) + " (" + std::to_string(year) +
                                  ") published by both " + it->second + " and " + member);
        }
    };
    for (const auto* j : members) {
        if (j->volume_year_map) {
            for (const auto& [vol, year] : *j->volume_year_map) {
                claim(vol, year, j->journal_id);
            }
        }
        for (auto pos : corpus.documents_of(j->journal_id)) {
            const auto& d = corpus.documents()[pos];
            if (d.volume) {
                claim(*d.volume, d.year, j->journal_id);
            }
        }
    }

    JournalScope scope;
    scope.members = ids;
    auto& rec = scope.record;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        rec.journal_id += (i ? "+" : "") + ids[i];
    }
    std::set<std::string> issns;
    std::vector<YearRange> coverage;
    std::map<int, std::set<int>> volumes;
    bool any_map = false;
    rec.commencement_year = members.front()->commencement_year;
    for (const auto* j : members) {
        issns.insert(j->issns.begin(), j->issns.end());
        rec.title_history.insert(rec.title_history.end(), j->title_history.begin(), j->title_history.end());
        rec.commencement_year = std::min(rec.commencement_year, j->commencement_year);
        coverage.insert(coverage.end(), j->coverage.begin(), j->coverage.end());
        if (j->volume_year_map) {
            any_map = true;
            for (const auto& [vol, year] : *j->volume_year_map) {
                volumes[vol].insert(year);
            }
        }
    }
    rec.issns.assign(issns.begin(), issns.end());
    std::sort(rec.title_history.begin(), rec.title_history.end(), [](const auto& a, const auto& b) {
        return std::tie(a.from_year, a.title) < std::tie(b.from_year, b.title);
    });
    rec.coverage = merge_ranges(std::move(coverage));
    if (any_map) {
        std::vector<std::pair<int, int>> map;
        for (const auto& [vol, years] : volumes) {
            // a volume number reused across a rename says nothing about its year
            if (years.size() == 1) {
                map.emplace_back(vol, *years.begin());
            }
        }
        rec.volume_year_map = std::move(map);
    }
    return scope;
}

JournalScope scope_of(const Corpus& corpus, std::string_view journal_id, bool merge_renames) {
    const auto* j = corpus.find_journal(journal_id);
    if (!j) {
        throw UnknownJournal(std::string(journal_id));
    }
    if (!merge_renames) {
        return single_scope(*j);
    }
    auto pos = static_cast<std::size_t>(j - corpus.journals().data());
    for (const auto& lineage : issn_lineages(corpus)) {
        if (std::find(lineage.begin(), lineage.end(), pos) == lineage.end()) {
            continue;
        }
        std::vector<std::string> ids;
        for (auto m : lineage) {
            ids.push_back(corpus.journals()[m].journal_id);
        }
        try {
            return merge_journal_history(ids, corpus);
        } catch (const OverlapConflict&) {
            return single_scope(*j);
        }
    }
    return single_scope(*j);
}

std::vector<JournalScope> journal_scopes(const Corpus& corpus, bool merge_renames) {
    std::vector<JournalScope> out;
    if (!merge_renames) {
        for (const auto& j : corpus.journals()) {
            out.push_back(single_scope(j));
        }
        return out;
    }
    for (const auto& lineage : issn_lineages(corpus)) {
        std::vector<std::string> ids;
        for (auto m : lineage) {
            ids.push_back(corpus.journals()[m].journal_id);
        }
        try {
            out.push_back(merge_journal_history(ids, corpus));
        } catch (const OverlapConflict&) {
            for (auto m : lineage) {
                out.push_back(single_scope(corpus.journals()[m]));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });
    return out;
}

// ---------------------------------------------------------------------------
// Citation index

namespace {
const std::vector<std::size_t> kNone;
}

CitationIndex::CitationIndex(const Corpus& corpus, const std::vector<ResolvedLink>& links, ResolutionConfig cfg)
    : corpus_(corpus), cfg_(cfg) {
    std::map<std::pair<std::string_view, std::size_t>, const ResolvedLink*> link_of;
    for (const auto& l : links) {
        link_of[{l.citing_doc_id, l.ref_index}] = &l;
    }
    const auto& docs = corpus.documents();
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (std::size_t r = 0; r < docs[d].references.size(); ++r) {
            const auto& ref = docs[d].references[r];
            Citation c{d, r, nullptr, nullptr};
            if (auto it = link_of.find({docs[d].doc_id, ref.ref_index}); it != link_of.end()) {
                c.link = it->second;
                if (c.link->target_doc_id) {
                    c.target = corpus.find_document(*c.link->target_doc_id);
                }
            }
            auto id = citations_.size();
            citations_.push_back(c);
            by_work_[normalize_work_title(ref.cited_work, cfg_.truncation_length)].push_back(id);
            by_citing_journal_[docs[d].journal_id].push_back(id);
            if (c.target) {
                by_target_journal_[c.target->journal_id].push_back(id);
            }
        }
    }
}

const RawReference& CitationIndex::reference(const Citation& c) const {
    return corpus_.documents()[c.citing_doc].references[c.ref];
}

const std::vector<std::size_t>& CitationIndex::by_work(const std::string& normalized_title) const {
    auto it = by_work_.find(normalized_title);
    return it == by_work_.end() ? kNone : it->second;
}

const std::vector<std::size_t>& CitationIndex::by_target_journal(const std::string& journal_id) const {
    auto it = by_target_journal_.find(journal_id);
    return it == by_target_journal_.end() ? kNone : it->second;
}

const std::vector<std::size_t>& CitationIndex::by_citing_journal(const std::string& journal_id) const {
    auto it = by_citing_journal_.find(journal_id);
    return it == by_citing_journal_.end() ? kNone : it->second;
}

bool CitationIndex::counts_as_verified(MatchClass c) const {
    return c == MatchClass::CompleteCorrect || (c == MatchClass::IncompleteCorrect && cfg_.count_incomplete_in_G11);
}

// ---------------------------------------------------------------------------
// Window repair and tallies

std::vector<WindowRepair> check_window_consistency(const JournalScope& scope, const Corpus& corpus,
                                                   const IndexVariantSpec& spec) {
    std::vector<WindowRepair> repairs;
    if (spec.suspension_policy == SuspensionPolicy::None) {
        return repairs;
    }
    for (int year = spec.first_cohort_year(); year <= spec.last_cohort_year(); ++year) {
        if (!scope.record.in_coverage_gap(year)) {
            continue;
        }
        if (spec.suspension_policy == SuspensionPolicy::OmitCitations) {
            repairs.push_back({year, RepairAction::DropCitations});
            continue;
        }
        bool present = std::any_of(scope.members.begin(), scope.members.end(),
                                   [&](const std::string& m) { return !corpus.documents_by_year(m, year).empty(); });
        if (!present) {
            throw MissingDocuments(scope.id() + " has no documents for gap year " + std::to_string(year));
        }
        repairs.push_back({year, RepairAction::IncludeDocuments});
    }
    return repairs;
}

namespace {

struct Tally {
    std::vector<WindowRepair> repairs;
    std::vector<CohortYear> years;
    std::vector<std::size_t> cohort_docs;  // ascending positions
    std::vector<std::int64_t> per_doc;
    std::vector<std::size_t> counted;  // citation ids in the numerator
    std::int64_t numerator = 0;
    std::int64_t denominator = 0;
};

std::set<int> dropped_years(const std::vector<WindowRepair>& repairs) {
    std::set<int> out;
    for (const auto& r : repairs) {
        if (r.action == RepairAction::DropCitations) {
            out.insert(r.cohort_year);
        }
    }
    return out;
}

std::vector<std::size_t> cohort_documents(const JournalScope& scope, const Corpus& corpus,
                                          const IndexVariantSpec& spec, const std::set<int>& dropped) {
    std::vector<std::size_t> out;
    for (const auto& m : scope.members) {
        for (int year = spec.first_cohort_year(); year <= spec.last_cohort_year(); ++year) {
            if (dropped.count(year)) {
                continue;
            }
            for (auto pos : corpus.documents_by_year(m, year)) {
                const auto& d = corpus.documents()[pos];
                if (spec.denominator_mode == DenominatorMode::AllItems || d.citable()) {
                    out.push_back(pos);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Tally tally(const JournalScope& scope, const CitationIndex& index, const IndexVariantSpec& spec) {
    if (spec.window_years < 1) {
        throw ConfigError("window must be at least one year");
    }
    const auto& corpus = index.corpus();
    Tally t;
    t.repairs = check_window_consistency(scope, corpus, spec);
    const auto dropped = dropped_years(t.repairs);
    t.cohort_docs = cohort_documents(scope, corpus, spec, dropped);
    t.denominator = static_cast<std::int64_t>(t.cohort_docs.size());

    std::map<int, std::size_t> year_slot;
    for (int year = spec.first_cohort_year(); year <= spec.last_cohort_year(); ++year) {
        year_slot[year] = t.years.size();
        t.years.push_back({year, 0, 0, dropped.count(year) == 0});
    }
    for (auto pos : t.cohort_docs) {
        ++t.years[year_slot.at(corpus.documents()[pos].year)].docs;
    }
    t.per_doc.assign(t.cohort_docs.size(), 0);

    std::size_t unattributed = 0;
    auto count = [&](std::size_t id, int cohort_year, const DocumentRecord* target) {
        t.counted.push_back(id);
        ++t.numerator;
        ++t.years[year_slot.at(cohort_year)].cites;
        if (t.cohort_docs.empty()) {
            return;
        }
        if (target) {
            auto pos = static_cast<std::size_t>(target - corpus.documents().data());
            auto it = std::lower_bound(t.cohort_docs.begin(), t.cohort_docs.end(), pos);
            if (it != t.cohort_docs.end() && *it == pos) {
                ++t.per_doc[static_cast<std::size_t>(it - t.cohort_docs.begin())];
                return;
            }
        }
        ++t.per_doc[unattributed++ % t.cohort_docs.size()];
    };

    auto citing_ok = [&](const DocumentRecord& citing) {
        if (citing.year != spec.census_year) {
            return false;
        }
        if (spec.self_cites == SelfCitePolicy::Exclude && scope.contains(citing.journal_id)) {
            return false;
        }
        return true;
    };

    if (spec.numerator_mode == NumeratorMode::OneOne) {
        std::vector<std::size_t> ids;
        for (const auto& m : scope.members) {
            const auto& v = index.by_target_journal(m);
            ids.insert(ids.end(), v.begin(), v.end());
        }
        std::sort(ids.begin(), ids.end());
        for (auto id : ids) {
            const auto& c = index.citations()[id];
            const auto& citing = index.citing(c);
            if (!citing_ok(citing) || !citing.citable() || !index.counts_as_verified(c.link->match_class)) {
                continue;
            }
            if (!c.target->citable() || !spec.in_window(c.target->year) || dropped.count(c.target->year)) {
                continue;
            }
            count(id, c.target->year, c.target);
        }
    } else {
        std::set<std::string> titles;
        for (const auto& p : scope.record.title_history) {
            titles.insert(normalize_work_title(p.title, index.config().truncation_length));
        }
        std::vector<std::size_t> ids;
        for (const auto& title : titles) {
            const auto& v = index.by_work(title);
            ids.insert(ids.end(), v.begin(), v.end());
        }
        std::sort(ids.begin(), ids.end());
        for (auto id : ids) {
            const auto& c = index.citations()[id];
            const auto& citing = index.citing(c);
            const auto& ref = index.reference(c);
            if (!citing_ok(citing) || !ref.cited_year || !spec.in_window(*ref.cited_year) ||
                dropped.count(*ref.cited_year)) {
                continue;
            }
            if (spec.numerator_mode == NumeratorMode::AM && !citing.citable()) {
                continue;
            }
            count(id, *ref.cited_year, c.target);
        }
    }
    return t;
}

std::int64_t pow10(int k) {
    std::int64_t p = 1;
    while (k-- > 0) {
        p *= 10;
    }
    return p;
}

std::string fixed_from_scaled(__int128 scaled, int decimals) {
    auto unit = static_cast<__int128>(pow10(decimals));
    auto whole = static_cast<long long>(scaled / unit);
    auto frac = static_cast<long long>(scaled % unit);
    std::string out = std::to_string(whole);
    if (decimals > 0) {
        std::string f = std::to_string(frac);
        out += '.' + std::string(static_cast<std::size_t>(decimals) - f.size(), '0') + f;
    }
    return out;
}

std::string round_decimal_string(const std::string& s, int decimals) {
    std::string body = s;
    bool negative = !body.empty() && body.front() == '-';
    if (negative) {
        body.erase(0, 1);
    }
    auto dot = body.find('.');
    std::string whole = dot == std::string::npos ? body : body.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : body.substr(dot + 1);
    frac.resize(static_cast<std::size_t>(decimals) + 1, '0');
    std::string digits = whole + frac.substr(0, static_cast<std::size_t>(decimals));
    if (frac[static_cast<std::size_t>(decimals)] >= '5') {
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && digits[static_cast<std::size_t>(i)] == '9') {
            digits[static_cast<std::size_t>(i--)] = '0';
        }
        if (i < 0) {
            digits.insert(digits.begin(), '1');
        } else {
            ++digits[static_cast<std::size_t>(i)];
        }
    }
    std::string int_part = digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
    std::string out = int_part.empty() ? "0" : int_part;
    if (decimals > 0) {
        out += '.' + digits.substr(digits.size() - static_cast<std::size_t>(decimals));
    }
    bool zero = out.find_first_not_of("0.") == std::string::npos;
    return negative && !zero ? '-' + out : out;
}

IndexResult build_result(const JournalScope& scope, const IndexVariantSpec& spec, Tally t,
                         const IndexOptions& options) {
    IndexResult r;
    r.journal_id = scope.id();
    r.spec = spec;
    r.numerator = t.numerator;
    r.denominator = t.denominator;
    r.per_year_breakdown = std::move(t.years);
    r.repairs = std::move(t.repairs);
    r.per_document_counts = std::move(t.per_doc);
    if (r.denominator == 0) {
        r.display = "n/a";
        return r;
    }
    r.value = static_cast<double>(r.numerator) / static_cast<double>(r.denominator);
    if (options.bootstrap) {
        const auto& b = *options.bootstrap;
        auto ci = bootstrap_ci(r.per_document_counts, b.level, b.replicates, b.seed, options.threads);
        // keep the point estimate inside its reported interval
        ci.low = std::min(ci.low, *r.value);
        ci.high = std::max(ci.high, *r.value);
        r.ci = ci;
    }
    r.display = round_display(r.numerator, r.denominator, options.rounding, r.ci);
    return r;
}

}  // namespace

std::int64_t compute_numerator(const JournalScope& scope, const CitationIndex& index, const IndexVariantSpec& spec) {
    return tally(scope, index, spec).numerator;
}

std::int64_t compute_numerator(std::string_view journal_id, const CitationIndex& index, const IndexVariantSpec& spec) {
    return compute_numerator(scope_of(index.corpus(), journal_id, spec.merge_renames), index, spec);
}

std::vector<std::size_t> numerator_citations(const JournalScope& scope, const CitationIndex& index,
                                             const IndexVariantSpec& spec) {
    return tally(scope, index, spec).counted;
}

std::int64_t compute_denominator(const JournalScope& scope, const Corpus& corpus, const IndexVariantSpec& spec) {
    auto dropped = dropped_years(check_window_consistency(scope, corpus, spec));
    return static_cast<std::int64_t>(cohort_documents(scope, corpus, spec, dropped).size());
}

std::int64_t compute_denominator(std::string_view journal_id, const Corpus& corpus, const IndexVariantSpec& spec) {
    return compute_denominator(scope_of(corpus, journal_id, spec.merge_renames), corpus, spec);
}

IndexResult compute_index_or_undefined(const JournalScope& scope, const CitationIndex& index,
                                       const IndexVariantSpec& spec, const IndexOptions& options) {
    return build_result(scope, spec, tally(scope, index, spec), options);
}

IndexResult compute_index(const JournalScope& scope, const CitationIndex& index, const IndexVariantSpec& spec,
                          const IndexOptions& options) {
    auto r = compute_index_or_undefined(scope, index, spec, options);
    if (!r.value) {
        throw UndefinedIndex(scope.id() + ": no documents in the " + std::to_string(spec.first_cohort_year()) + "-" +
                             std::to_string(spec.last_cohort_year()) + " cohort");
    }
    return r;
}

IndexResult compute_index(std::string_view journal_id, const CitationIndex& index, const IndexVariantSpec& spec,
                          const IndexOptions& options) {
    return compute_index(scope_of(index.corpus(), journal_id, spec.merge_renames), index, spec, options);
}

IndexResult index_from_counts(std::int64_t numerator, std::int64_t denominator, RoundingPolicy rounding) {
    if (denominator <= 0) {
        throw UndefinedIndex("denominator is zero");
    }
    IndexResult r;
    r.numerator = numerator;
    r.denominator = denominator;
    r.value = static_cast<double>(numerator) / static_cast<double>(denominator);
    r.display = round_display(numerator, denominator, rounding);
    return r;
}

// ---------------------------------------------------------------------------
// Bootstrap

namespace {

// Unbiased draw in [0, n) from the raw engine output. The engine sequence is
// fixed by the standard, unlike the library distributions.
std::size_t draw_index(std::mt19937_64& gen, std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

}  // namespace

ConfidenceInterval bootstrap_ci(std::span<const std::int64_t> per_document_counts, double level,
                                std::size_t replicates, std::uint64_t seed, unsigned threads) {
    if (per_document_counts.empty()) {
        throw EmptyCohort("bootstrap over an empty cohort");
    }
    if (replicates == 0) {
        throw ConfigError("bootstrap needs at least one replicate");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw ConfigError("confidence level must lie in (0, 1)");
    }
    const std::size_t n = per_document_counts.size();
    std::vector<double> means(replicates);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            std::mt19937_64 gen(seed + r);
            std::int64_t sum = 0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += per_document_counts[draw_index(gen, n)];
            }
            means[r] = static_cast<double>(sum) / static_cast<double>(n);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || replicates < 2) {
        run(0, replicates);
    } else {
        std::vector<std::jthread> pool;
        std::size_t chunk = (replicates + threads - 1) / threads;
        for (std::size_t b = 0; b < replicates; b += chunk) {
            pool.emplace_back(run, b, std::min(replicates, b + chunk));
        }
    }
    std::sort(means.begin(), means.end());
    const double tail = (1.0 - level) / 2.0;
    const double last = static_cast<double>(replicates - 1);
    auto lo = static_cast<std::size_t>(std::floor(tail * last));
    auto hi = static_cast<std::size_t>(std::ceil((1.0 - tail) * last));
    return {means[std::min(lo, replicates - 1)], means[std::min(hi, replicates - 1)]};
}

// ---------------------------------------------------------------------------
// Rounding and ranking

int display_decimals(RoundingPolicy policy, const std::optional<ConfidenceInterval>& ci) {
    switch (policy) {
        case RoundingPolicy::ThreeDecimal: return 3;
        case RoundingPolicy::OneDecimal: return 1;
        case RoundingPolicy::ErrorAware: break;
    }
    if (!ci) {
        return 1;
    }
    const double half_width = (ci->high - ci->low) / 2.0;
    double unit = 1.0;
    for (int k = 0; k <= 3; ++k) {
        if (half_width > unit / 2.0) {
            return k;
        }
        unit /= 10.0;
    }
    return 3;
}

std::string round_display(double value, RoundingPolicy policy, const std::optional<ConfidenceInterval>& ci) {
    return round_decimal_string(format_number(value), display_decimals(policy, ci));
}

std::string round_display(std::int64_t numerator, std::int64_t denominator, RoundingPolicy policy,
                          const std::optional<ConfidenceInterval>& ci) {
    if (denominator <= 0) {
        return "n/a";
    }
    const int k = display_decimals(policy, ci);
    const __int128 scaled = static_cast<__int128>(numerator) * pow10(k);
    const __int128 q = (2 * scaled + denominator) / (2 * static_cast<__int128>(denominator));
    return fixed_from_scaled(q, k);
}

std::vector<RankedJournal> rank_journals(std::span<const IndexResult> results, RoundingPolicy policy) {
    for (const auto& r : results) {
        if (!(r.spec == results.front().spec)) {
            throw MixedSpecs("results " + results.front().journal_id + " and " + r.journal_id +
                             " were computed under different variant specs");
        }
    }
    struct Row {
        RankedJournal out;
        std::optional<double> shown;
    };
    std::vector<Row> rows;
    for (const auto& r : results) {
        Row row;
        row.out.journal_id = r.journal_id;
        if (r.value) {
            row.out.display = round_display(*r.value, policy, r.ci);
            row.shown = std::stod(row.out.display);
        } else {
            row.out.display = "n/a";
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.shown.has_value() != b.shown.has_value()) {
            return a.shown.has_value();
        }
        if (a.shown && *a.shown != *b.shown) {
            return *a.shown > *b.shown;
        }
        return a.out.journal_id < b.out.journal_id;
    });
    std::vector<RankedJournal> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].shown) {
            bool tied = i > 0 && rows[i - 1].shown && *rows[i - 1].shown == *rows[i].shown;
            rows[i].out.rank = tied ? out.back().rank : static_cast<int>(i) + 1;
        }
        out.push_back(rows[i].out);
    }
    return out;
}

}  // namespace garfield
