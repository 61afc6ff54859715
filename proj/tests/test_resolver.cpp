#include "doctest.h"

#include "fixtures.hpp"
#include "garfield/resolver.hpp"
#include "oracle.hpp"

using namespace garfield;

namespace {

std::vector<MatchClass> classes(const std::vector<ResolvedLink>& links) {
    std::vector<MatchClass> out;
    for (const auto& l : links) out.push_back(l.match_class);
    return out;
}

}  // namespace

TEST_SUITE("resolver") {

TEST_CASE("M1 references classify by the four rules") {
    auto corpus = fixtures::m1();
    auto links = resolve_corpus(corpus, {});
    REQUIRE(links.size() == 4);
    CHECK(classes(links) == std::vector<MatchClass>{MatchClass::CompleteCorrect, MatchClass::IncompleteCorrect,
                                                    MatchClass::Ghost, MatchClass::CompleteCorrect});
    CHECK(links[0].target_doc_id == "a1");
    CHECK(links[0].evidence.rule == Rule::Doi);
    CHECK(links[0].score == 1.0);
    CHECK(links[1].target_doc_id == "a2");
    CHECK(links[1].evidence.rule == Rule::Fuzzy);
    CHECK(links[1].evidence.title == Evidence::Near);
    CHECK_FALSE(links[2].target_doc_id);
    CHECK_FALSE(links[2].target_journal_id);
    CHECK(links[3].target_doc_id == "a1");
    CHECK(links[3].evidence.rule == Rule::Exact);
    CHECK(links[3].citing_doc_id == "b2");
}

TEST_CASE("edit distance 0 turns the typo into a ghost") {
    ResolutionConfig cfg;
    cfg.title_edit_distance_max = 0;
    auto links = resolve_corpus(fixtures::m1(), cfg);
    CHECK(classes(links) == std::vector<MatchClass>{MatchClass::CompleteCorrect, MatchClass::Ghost, MatchClass::Ghost,
                                                    MatchClass::CompleteCorrect});
}

TEST_CASE("no references, no links") {
    Corpus corpus({fixtures::journal("J", "J", 2000)}, {fixtures::document("d", "J", 2005, DocType::Article)});
    CHECK(resolve_corpus(corpus, {}).empty());
}

TEST_CASE("a DOI wins over contradicting fields, which make the link faulty") {
    auto corpus = fixtures::m1();
    RawReference ref = fixtures::reference("Acta Alpha", 2001, 40, "13", "https://doi.org/10.1/A1");
    auto link = resolve_reference(*corpus.find_document("b1"), ref, corpus, {});
    CHECK(link.target_doc_id == "a1");
    CHECK(link.match_class == MatchClass::Faulty);
    CHECK(link.evidence.year == Evidence::Mismatch);
    CHECK(link.score == doctest::Approx(0.85));
}

TEST_CASE("a year off by one under a DOI is near, but alone it cannot make a complete match") {
    auto corpus = fixtures::m1();
    auto near = fixtures::reference("Acta Alpha", 2009, 40, "13", "10.1/a1");
    CHECK(resolve_reference(*corpus.find_document("b1"), near, corpus, {}).match_class == MatchClass::CompleteCorrect);
    auto no_doi = fixtures::reference("Acta Alpha", 2009, 40, "13");
    auto link = resolve_reference(*corpus.find_document("b1"), no_doi, corpus, {});
    CHECK(link.match_class != MatchClass::CompleteCorrect);
    CHECK(link.match_class != MatchClass::IncompleteCorrect);
}

TEST_CASE("with DOI override off the locator decides") {
    auto corpus = fixtures::m1();
    ResolutionConfig cfg;
    cfg.doi_overrides_fields = false;
    auto ref = fixtures::reference("Acta Alpha", 2009, 41, "101", "10.1/a1");
    auto link = resolve_reference(*corpus.find_document("b1"), ref, corpus, cfg);
    CHECK(link.target_doc_id == "a2");
    CHECK(link.match_class == MatchClass::CompleteCorrect);
}

TEST_CASE("a volume from another year identifies the journal but not the paper") {
    auto corpus = fixtures::m1();
    auto ref = fixtures::reference("Acta Alpha", 2008, 41, "17");
    auto link = resolve_reference(*corpus.find_document("b1"), ref, corpus, {});
    CHECK(link.match_class == MatchClass::Faulty);
    CHECK_FALSE(link.target_doc_id);
    CHECK(link.target_journal_id == "JA");
    CHECK(link.evidence.rule == Rule::Contradiction);

    auto early = fixtures::reference("Acta Alpha", 1985);
    auto pre = resolve_reference(*corpus.find_document("b1"), early, corpus, {});
    CHECK(pre.match_class == MatchClass::Faulty);
    CHECK(pre.target_journal_id == "JA");
}

TEST_CASE("equal candidates go to the smallest doc_id and the tie is recorded") {
    std::vector<DocumentRecord> docs{fixtures::document("t2", "J", 2005, DocType::Article, 5, "9"),
                                     fixtures::document("t1", "J", 2005, DocType::Article, 5, "9"),
                                     fixtures::document("c", "J", 2006, DocType::Article)};
    fixtures::cite(docs[2], fixtures::reference("Jrnl", 2005, 5, "9"));
    Corpus corpus({fixtures::journal("J", "Jrnl", 2000)}, docs);
    auto links = resolve_corpus(corpus, {});
    REQUIRE(links.size() == 1);
    CHECK(links[0].target_doc_id == "t1");
    CHECK(links[0].evidence.tied_candidates == 2);
}

TEST_CASE("scores renormalise over present fields") {
    FieldEvidence e;
    CHECK(link_score(e) == 0.0);
    e.title = Evidence::Exact;
    e.year = Evidence::Mismatch;
    CHECK(link_score(e) == doctest::Approx(0.25 / 0.40));
    e.doi = Evidence::Exact;
    e.volume = Evidence::Exact;
    e.page = Evidence::Near;
    CHECK(link_score(e) == doctest::Approx(0.85));
}

TEST_CASE("links do not depend on the thread count") {
    auto corpus = fixtures::synthetic_corpus(3, 12, 4000);
    auto one = resolve_corpus(corpus, {}, 1);
    CHECK(one.size() == corpus.reference_count());
    CHECK(resolve_corpus(corpus, {}, 4) == one);
    CHECK(resolve_corpus(corpus, {}, 7) == one);
}

TEST_CASE("every link agrees with the exhaustive matcher") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        auto corpus = fixtures::random_corpus(seed);
        for (std::size_t distance : {0, 1, 2}) {
            ResolutionConfig cfg;
            cfg.title_edit_distance_max = distance;
            auto links = resolve_corpus(corpus, cfg);
            REQUIRE(links.size() == corpus.reference_count());
            std::size_t k = 0;
            for (const auto& d : corpus.documents()) {
                for (const auto& ref : d.references) {
                    const auto& got = links[k++];
                    auto want = oracle::resolve(corpus, ref, cfg);
                    INFO("seed " << seed << " distance " << distance << " ref " << d.doc_id << "#" << ref.ref_index);
                    CHECK(got.citing_doc_id == d.doc_id);
                    CHECK(got.match_class == want.match_class);
                    CHECK(got.target_doc_id == want.target_doc_id);
                    CHECK(got.target_journal_id == want.target_journal_id);
                    CHECK(got.score == doctest::Approx(want.score));
                }
            }
        }
    }
}

TEST_CASE("tightening the edit distance never makes a link more correct") {
    auto rank = [](MatchClass c) {
        switch (c) {
            case MatchClass::CompleteCorrect: return 3;
            case MatchClass::IncompleteCorrect: return 2;
            case MatchClass::Faulty: return 1;
            case MatchClass::Ghost: return 0;
        }
        return 0;
    };
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto corpus = fixtures::random_corpus(seed);
        std::vector<std::vector<ResolvedLink>> by_distance;
        for (std::size_t distance : {3, 2, 1, 0}) {
            ResolutionConfig cfg;
            cfg.title_edit_distance_max = distance;
            by_distance.push_back(resolve_corpus(corpus, cfg));
        }
        for (std::size_t step = 1; step < by_distance.size(); ++step) {
            for (std::size_t i = 0; i < by_distance[step].size(); ++i) {
                const auto& loose = by_distance[step - 1][i];
                const auto& tight = by_distance[step][i];
                INFO("seed " << seed << " link " << i);
                if (tight.match_class == MatchClass::CompleteCorrect) {
                    CHECK(loose.match_class == MatchClass::CompleteCorrect);
                }
                if (loose.match_class == MatchClass::Ghost) {
                    CHECK(tight.match_class == MatchClass::Ghost);
                }
                if (rank(loose.match_class) >= 2) {
                    CHECK(rank(tight.match_class) <= rank(loose.match_class));
                }
            }
        }
    }
}

TEST_CASE("a resolving DOI always fixes the target") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto corpus = fixtures::random_corpus(seed);
        auto links = resolve_corpus(corpus, {});
        std::size_t k = 0;
        for (const auto& d : corpus.documents()) {
            for (const auto& ref : d.references) {
                const auto& link = links[k++];
                if (!ref.cited_doi) continue;
                const auto& hits = corpus.documents_by_doi(*ref.cited_doi);
                if (hits.empty()) continue;
                CHECK(link.target_doc_id == corpus.documents()[hits.front()].doc_id);
            }
        }
    }
}

TEST_CASE("class invariants hold on every link") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto corpus = fixtures::random_corpus(seed);
        for (const auto& l : resolve_corpus(corpus, {})) {
            CHECK(l.score >= 0.0);
            CHECK(l.score <= 1.0);
            if (l.match_class == MatchClass::Ghost) CHECK_FALSE(l.target_doc_id);
            if (l.match_class == MatchClass::CompleteCorrect) {
                CHECK(l.target_doc_id);
                CHECK(l.score >= 0.9);
            }
        }
    }
}

}
