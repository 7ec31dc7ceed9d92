#include "evrec/errors.hpp"
#include "evrec/eval.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace evrec;

using Seed = std::vector<std::string>;

TEST(Recall, HandCountedScenario)
{
    auto scenario = evrec::testing::recall_scenario();
    auto index = InvertedIndex::build(scenario.corpus);
    auto report = recall_increase(index, Seed{"school"}, scenario.model, StopwordList::builtin(), {}, 0.0);
    EXPECT_EQ(report.seed_hits, 4u);
    EXPECT_EQ(report.expanded_hits, 13u);
    ASSERT_TRUE(report.increase_pct);
    EXPECT_EQ(*report.increase_pct, 225.0);
    ASSERT_EQ(report.expansion_terms.size(), 1u);
    EXPECT_EQ(report.expansion_terms[0].first, "bookbag");
    EXPECT_EQ(report.month, (MonthKey{2018, 8}));
}

TEST(Recall, EmptyExpansionIsZeroIncrease)
{
    auto scenario = evrec::testing::recall_scenario();
    auto index = InvertedIndex::build(scenario.corpus);
    auto report = recall_increase(index, Seed{"school"}, scenario.model, StopwordList::builtin(), {4, 0.9}, 0.0);
    EXPECT_TRUE(report.expansion_terms.empty());
    EXPECT_EQ(report.seed_hits, report.expanded_hits);
    EXPECT_EQ(*report.increase_pct, 0.0);
}

TEST(Recall, UndefinedBaseline)
{
    auto scenario = evrec::testing::recall_scenario();
    auto index = InvertedIndex::build(scenario.corpus);
    EXPECT_THROW(recall_increase(index, Seed{"sleigh"}, scenario.model, StopwordList::builtin(), {}, 0.0),
                 UndefinedBaseline);

    auto q = ExpandedQuery::seed_only(Seed{"sleigh"}, StopwordList::builtin());
    auto report = compare_recall(index, q, Scorer::tfidf(), 0.0);
    EXPECT_EQ(report.seed_hits, 0u);
    EXPECT_FALSE(report.increase_pct);
}

TEST(Recall, NonNegativeAndPureOnRandomCorpora)
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> weight(0.61, 1.0);
    for (int round = 0; round < 20; ++round) {
        auto corpus = evrec::testing::random_corpus(rng, 120, 40, 2, 10);
        auto index = InvertedIndex::build(corpus);
        auto q = with_expansions(ExpandedQuery::seed_only(Seed{"t3 t11"}, StopwordList{}),
                                 {{"t5", weight(rng)}, {"t17", weight(rng)}});
        for (double threshold : {0.0, 1.0, 3.0}) {
            auto report = compare_recall(index, q, Scorer::tfidf(), threshold);
            EXPECT_GE(report.expanded_hits, report.seed_hits);
            if (report.increase_pct)
                EXPECT_GE(*report.increase_pct, 0.0);
            EXPECT_EQ(report, compare_recall(index, q, Scorer::tfidf(), threshold));
        }
    }
}

TEST(Recall, ReportFormat)
{
    auto scenario = evrec::testing::recall_scenario();
    auto index = InvertedIndex::build(scenario.corpus);
    auto report = recall_increase(index, Seed{"back to school"}, scenario.model, StopwordList::builtin(), {}, 0.0);
    std::ostringstream out;
    write_report(out, report);
    // "back" appears in one school title, so it adds no new hits
    EXPECT_EQ(out.str(), "month=2018-08\n"
                         "scorer=tfidf\n"
                         "threshold=0.000000\n"
                         "seed_terms=back,to,school\n"
                         "expansion_terms=bookbag:0.800000\n"
                         "seed_hits=4\n"
                         "expanded_hits=13\n"
                         "increase_pct=225.000000\n"
                         "seed_hits=4 expanded_hits=13 increase=225.0%\n");
}
