#include "doctest.h"

#include "fixtures.hpp"
#include "garfield/error.hpp"
#include "garfield/stats.hpp"

using namespace garfield;

namespace {

AccrualCurve curve(std::vector<std::pair<int, std::int64_t>> counts) {
    AccrualCurve c;
    c.journal_id = "X";
    c.counts_by_offset = std::move(counts);
    return c;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("distribution of a skewed cohort") {
    std::vector<std::int64_t> counts{0, 0, 1, 2, 7};
    auto s = distribution_summary(counts);
    CHECK(s.n_docs == 5);
    CHECK(s.mean == 2.0);
    CHECK(s.median == 1.0);
    CHECK(s.mode == 0);
    CHECK(s.min == 0);
    CHECK(s.max == 7);
    CHECK(s.share_uncited == doctest::Approx(0.4));
    CHECK(s.total == 10);
}

TEST_CASE("singletons, tied modes and even medians") {
    std::vector<std::int64_t> three{3};
    auto s = distribution_summary(three);
    CHECK(s.mean == 3.0);
    CHECK(s.median == 3.0);
    CHECK(s.mode == 3);
    std::vector<std::int64_t> tied{2, 1, 2, 1};
    auto t = distribution_summary(tied);
    CHECK(t.mode == 1);
    CHECK(t.median == 1.5);
    std::vector<std::int64_t> none;
    CHECK_THROWS_AS(distribution_summary(none), EmptyCohort);
}

TEST_CASE("M1 accrual for the 2008 cohort") {
    auto corpus = fixtures::m1();
    auto links = resolve_corpus(corpus, {});
    CitationIndex index(corpus, links, {});
    auto c = accrual_curve("JA", 2008, index);
    // b1 cites a1; the b2 editorial is not a citable citing item
    CHECK(c.counts_by_offset == std::vector<std::pair<int, std::int64_t>>{{2, 1}});
    CHECK(c.peak_offset == 2);
    CHECK(c.total() == 1);
    CHECK(c.anomalies.empty());
    CHECK_THROWS_AS(accrual_curve("JA", 2001, index), EmptyCohort);
    CHECK_THROWS_AS(accrual_curve("JQ", 2008, index), UnknownJournal);
}

TEST_CASE("uniform accrual peaks at the earliest offset; early citations are anomalies") {
    std::vector<DocumentRecord> docs{fixtures::document("p", "J", 2000, DocType::Article, 1, "5")};
    for (int year : {2001, 2002, 2003, 1999}) {
        auto d = fixtures::document("c" + std::to_string(year), "K", year, DocType::Article);
        fixtures::cite(d, fixtures::reference("Jay", 2000, 1, "5"));
        docs.push_back(d);
    }
    Corpus corpus({fixtures::journal("J", "Jay", 1990), fixtures::journal("K", "Kay", 1990)}, docs);
    auto links = resolve_corpus(corpus, {});
    CitationIndex index(corpus, links, {});
    auto c = accrual_curve("J", 2000, index);
    CHECK(c.counts_by_offset == std::vector<std::pair<int, std::int64_t>>{{1, 1}, {2, 1}, {3, 1}});
    CHECK(c.peak_offset == 1);
    CHECK(c.anomalies == std::vector<std::string>{"c1999#0"});
}

TEST_CASE("suggested windows") {
    CHECK(suggest_window(curve({{1, 10}}), 0.9) == 1);
    std::vector<std::pair<int, std::int64_t>> flat;
    for (int k = 1; k <= 10; ++k) flat.emplace_back(k, 1);
    CHECK(suggest_window(curve(flat), 0.5) == 5);
    std::vector<std::pair<int, std::int64_t>> late;
    for (int k = 1; k <= 20; ++k) late.emplace_back(k, 10 - std::abs(10 - k) + 1);
    CHECK(suggest_window(curve(late), 0.5) > 2);
    CHECK_THROWS_AS(suggest_window(curve({}), 0.5), DegenerateCurve);
    CHECK_THROWS_AS(suggest_window(curve({{0, 4}}), 0.5), DegenerateCurve);
}

}
