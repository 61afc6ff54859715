#include "garfield/resolver.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>

#include "garfield/text.hpp"

namespace garfield {

std::string_view to_string(MatchClass c) {
    switch (c) {
        case MatchClass::CompleteCorrect: return "CompleteCorrect";
        case MatchClass::IncompleteCorrect: return "IncompleteCorrect";
        case MatchClass::Faulty: return "Faulty";
        case MatchClass::Ghost: return "Ghost";
    }
    return "Ghost";
}

std::optional<MatchClass> parse_match_class(std::string_view s) {
    for (auto c : {MatchClass::CompleteCorrect, MatchClass::IncompleteCorrect, MatchClass::Faulty, MatchClass::Ghost}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Evidence e) {
    switch (e) {
        case Evidence::Exact: return "exact";
        case Evidence::Near: return "near";
        case Evidence::Mismatch: return "mismatch";
        case Evidence::Absent: return "absent";
    }
    return "absent";
}

std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::Doi: return "doi";
        case Rule::Exact: return "exact";
        case Rule::Fuzzy: return "fuzzy";
        case Rule::Contradiction: return "contradiction";
        case Rule::None: return "none";
    }
    return "none";
}

double link_score(const FieldEvidence& e) {
    double total = 0.0;
    double matched = 0.0;
    auto add = [&](Evidence ev, double w) {
        if (ev == Evidence::Absent) {
            return;
        }
        total += w;
        if (ev == Evidence::Exact || ev == Evidence::Near) {
            matched += w;
        }
    };
    add(e.doi, ScoreWeights::doi);
    add(e.title, ScoreWeights::title);
    add(e.year, ScoreWeights::year);
    add(e.volume, ScoreWeights::volume);
    add(e.page, ScoreWeights::page);
    return total > 0.0 ? matched / total : 0.0;
}

namespace {

bool exact_or_absent(Evidence e) { return e == Evidence::Exact || e == Evidence::Absent; }
bool agrees(Evidence e) { return e != Evidence::Mismatch; }

struct Candidate {
    std::size_t doc = 0;
    FieldEvidence evidence;
    double score = 0.0;
};

}  // namespace

Resolver::Resolver(const Corpus& corpus, ResolutionConfig cfg) : corpus_(corpus), cfg_(cfg) {
    std::map<std::string, std::vector<std::size_t>> by_title;
    journal_titles_.resize(corpus.journals().size());
    for (std::size_t i = 0; i < corpus.journals().size(); ++i) {
        for (const auto& t : corpus.journals()[i].title_history) {
            auto norm = normalize_work_title(t.title, cfg_.truncation_length);
            auto& own = journal_titles_[i];
            if (std::find(own.begin(), own.end(), norm) == own.end()) {
                own.push_back(norm);
                by_title[norm].push_back(i);
            }
        }
    }
    for (auto& [title, journals] : by_title) {
        titles_.push_back({title, std::move(journals)});
    }
}

std::vector<std::pair<std::size_t, std::size_t>> Resolver::matching_journals(const std::string& normalized_work) const {
    std::map<std::size_t, std::size_t> best;  // journal -> distance
    for (const auto& entry : titles_) {
        auto d = bounded_levenshtein(normalized_work, entry.normalized, cfg_.title_edit_distance_max);
        if (d > cfg_.title_edit_distance_max) {
            continue;
        }
        for (auto j : entry.journals) {
            auto [it, inserted] = best.emplace(j, d);
            if (!inserted) {
                it->second = std::min(it->second, d);
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [j, d] : best) {
        out.emplace_back(j, d);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    return out;
}

std::size_t Resolver::title_distance(const JournalRecord& journal, const std::string& normalized_work) const {
    auto pos = static_cast<std::size_t>(&journal - corpus_.journals().data());
    std::size_t best = cfg_.title_edit_distance_max + 1;
    for (const auto& t : journal_titles_[pos]) {
        best = std::min(best, bounded_levenshtein(normalized_work, t, cfg_.title_edit_distance_max));
    }
    return best;
}

ResolvedLink Resolver::resolve(const DocumentRecord& citing, const RawReference& ref) const {
    ResolvedLink link;
    link.citing_doc_id = citing.doc_id;
    link.ref_index = ref.ref_index;

    const auto work = normalize_work_title(ref.cited_work, cfg_.truncation_length);
    const auto& docs = corpus_.documents();

    auto evaluate = [&](std::size_t doc_pos) {
        const auto& d = docs[doc_pos];
        FieldEvidence e;
        if (ref.cited_doi && d.doi) {
            e.doi = normalize_doi(*ref.cited_doi) == normalize_doi(*d.doi) ? Evidence::Exact : Evidence::Mismatch;
        }
        auto dist = title_distance(*corpus_.find_journal(d.journal_id), work);
        e.title = dist == 0 ? Evidence::Exact
                  : dist <= cfg_.title_edit_distance_max ? Evidence::Near
                                                         : Evidence::Mismatch;
        if (ref.cited_year) {
            int diff = std::abs(*ref.cited_year - d.year);
            e.year = diff == 0 ? Evidence::Exact : diff == 1 ? Evidence::Near : Evidence::Mismatch;
        }
        if (ref.cited_volume && d.volume) {
            e.volume = *ref.cited_volume == *d.volume ? Evidence::Exact : Evidence::Mismatch;
        }
        if (ref.cited_page && d.first_page) {
            e.page = normalize_page(*ref.cited_page) == normalize_page(*d.first_page) ? Evidence::Exact
                                                                                       : Evidence::Mismatch;
        }
        return Candidate{doc_pos, e, link_score(e)};
    };

    // Highest score, then smallest doc_id (document order is doc_id order).
    auto pick = [](std::vector<Candidate>& cands) {
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            return a.score != b.score ? a.score > b.score : a.doc < b.doc;
        });
        std::size_t tied = 0;
        for (const auto& c : cands) {
            tied += c.score == cands.front().score ? 1 : 0;
        }
        Candidate best = cands.front();
        best.evidence.tied_candidates = tied;
        return best;
    };

    auto finish = [&](const Candidate& c, Rule rule, MatchClass cls) {
        link.target_doc_id = docs[c.doc].doc_id;
        link.evidence = c.evidence;
        link.evidence.rule = rule;
        link.match_class = cls;
        link.score = c.score;
        return link;
    };

    // 1. DOI
    if (ref.cited_doi && cfg_.doi_overrides_fields) {
        const auto& hits = corpus_.documents_by_doi(*ref.cited_doi);
        if (!hits.empty()) {
            std::vector<Candidate> cands;
            for (auto pos : hits) {
                cands.push_back(evaluate(pos));
            }
            auto best = pick(cands);
            const auto& e = best.evidence;
            bool consistent = agrees(e.title) && agrees(e.year) && agrees(e.volume) && agrees(e.page);
            return finish(best, Rule::Doi, consistent ? MatchClass::CompleteCorrect : MatchClass::Faulty);
        }
    }

    const auto journals = matching_journals(work);

    // 2. Exact locator under an exact title
    if (ref.cited_year && ref.cited_volume && ref.cited_page) {
        std::vector<Candidate> cands;
        for (const auto& [j, dist] : journals) {
            if (dist != 0) {
                continue;
            }
            for (auto pos : corpus_.documents_by_locator(corpus_.journals()[j].journal_id, *ref.cited_year,
                                                         *ref.cited_volume, *ref.cited_page)) {
                auto c = evaluate(pos);
                const auto& e = c.evidence;
                if (e.title == Evidence::Exact && e.year == Evidence::Exact && e.volume == Evidence::Exact &&
                    e.page == Evidence::Exact) {
                    cands.push_back(c);
                }
            }
        }
        if (!cands.empty()) {
            auto best = pick(cands);
            return finish(best, Rule::Exact,
                          best.evidence.doi == Evidence::Mismatch ? MatchClass::Faulty : MatchClass::CompleteCorrect);
        }
    }

    // 3. Near title, at least two exact locator fields, nothing contradicting
    {
        std::vector<Candidate> cands;
        std::vector<std::size_t> seen;
        auto consider = [&](std::size_t pos) {
            if (std::find(seen.begin(), seen.end(), pos) != seen.end()) {
                return;
            }
            seen.push_back(pos);
            auto c = evaluate(pos);
            const auto& e = c.evidence;
            int exact = (e.year == Evidence::Exact) + (e.volume == Evidence::Exact) + (e.page == Evidence::Exact);
            if (e.title != Evidence::Mismatch && exact >= 2 && exact_or_absent(e.year) &&
                exact_or_absent(e.volume) && exact_or_absent(e.page)) {
                cands.push_back(c);
            }
        };
        for (const auto& [j, dist] : journals) {
            const auto& jid = corpus_.journals()[j].journal_id;
            if (ref.cited_year) {
                for (auto pos : corpus_.documents_by_year(jid, *ref.cited_year)) {
                    consider(pos);
                }
            }
            if (ref.cited_volume) {
                for (auto pos : corpus_.documents_by_volume(jid, *ref.cited_volume)) {
                    consider(pos);
                }
            }
        }
        if (!cands.empty()) {
            auto best = pick(cands);
            return finish(best, Rule::Fuzzy,
                          best.evidence.doi == Evidence::Mismatch ? MatchClass::Faulty : MatchClass::IncompleteCorrect);
        }
    }

    // 4. Journal identified, but year/volume contradict what is known of it
    for (const auto& [j, dist] : journals) {
        const auto& journal = corpus_.journals()[j];
        bool gap = ref.cited_year && journal.in_coverage_gap(*ref.cited_year);
        bool volume_clash = false;
        if (ref.cited_year && ref.cited_volume) {
            auto mapped = journal.year_of_volume(*ref.cited_volume);
            volume_clash = mapped && *mapped != *ref.cited_year;
        }
        if (!gap && !volume_clash) {
            continue;
        }
        FieldEvidence e;
        e.title = dist == 0 ? Evidence::Exact : Evidence::Near;
        e.year = Evidence::Mismatch;
        e.volume = volume_clash ? Evidence::Mismatch : Evidence::Absent;
        e.rule = Rule::Contradiction;
        link.target_journal_id = journal.journal_id;
        link.match_class = MatchClass::Faulty;
        link.evidence = e;
        link.score = link_score(e);
        return link;
    }

    // 5. Ghost
    link.match_class = MatchClass::Ghost;
    link.evidence.title = journals.empty() ? Evidence::Mismatch
                          : journals.front().second == 0 ? Evidence::Exact
                                                         : Evidence::Near;
    link.score = 0.0;
    return link;
}

ResolvedLink resolve_reference(const DocumentRecord& citing, const RawReference& ref, const Corpus& corpus,
                               const ResolutionConfig& cfg) {
    return Resolver(corpus, cfg).resolve(citing, ref);
}

std::vector<ResolvedLink> resolve_corpus(const Corpus& corpus, const ResolutionConfig& cfg, unsigned threads) {
    Resolver resolver(corpus, cfg);
    const auto& docs = corpus.documents();

    std::vector<std::size_t> offsets(docs.size() + 1, 0);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        offsets[i + 1] = offsets[i] + docs[i].references.size();
    }
    std::vector<ResolvedLink> links(offsets.back());

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t r = 0; r < docs[i].references.size(); ++r) {
                links[offsets[i] + r] = resolver.resolve(docs[i], docs[i].references[r]);
            }
        }
    };
    if (threads == 1 || docs.size() < 2) {
        work(0, docs.size());
    } else {
        std::vector<std::jthread> pool;
        std::size_t chunk = (docs.size() + threads - 1) / threads;
        for (std::size_t b = 0; b < docs.size(); b += chunk) {
            pool.emplace_back(work, b, std::min(docs.size(), b + chunk));
        }
    }
    std::stable_sort(links.begin(), links.end(), [](const ResolvedLink& a, const ResolvedLink& b) {
        return a.citing_doc_id != b.citing_doc_id ? a.citing_doc_id < b.citing_doc_id : a.ref_index < b.ref_index;
    });
    return links;
}

}  // namespace garfield
