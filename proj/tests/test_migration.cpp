#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "migrant/migration.hpp"
#include "support/synthetic.hpp"

using namespace migrant;
using namespace migrant::synth;

namespace {

const LanguageId A("aa"), B("bb"), C("cc");

RankedList list(const LanguageId& lang, Year year, std::vector<std::pair<std::string, Count>> words) {
    std::vector<RankedEntry> e;
    for (std::size_t i = 0; i < words.size(); ++i) e.push_back({words[i].first, words[i].second, int(i) + 1});
    return RankedList(lang, year, std::move(e));
}

} // namespace

TEST(FirstAppearances, MinimumOverYears) {
    std::vector<RankedList> lists;
    std::vector<std::pair<std::string, Count>> filler;
    for (int i = 0; i < 39; ++i) filler.emplace_back(word_name(i), 1000 - i);
    auto with_word = filler;
    with_word.emplace_back("rome", 10);
    lists.push_back(list(A, 1900, with_word));
    lists.push_back(list(A, 1950, {{"rome", 5}}));
    lists.push_back(list(B, 1950, {{"x", 9}, {"rome", 5}}));
    Corpus corpus(std::move(lists));
    auto apps = first_appearances(corpus, "rome");
    ASSERT_EQ(apps.size(), 2u);
    EXPECT_EQ(apps.at(A), (FirstAppearance{A, 1900, 40}));
    EXPECT_EQ(apps.at(B), (FirstAppearance{B, 1950, 2}));
    EXPECT_TRUE(first_appearances(corpus, "carthage").empty());
}

TEST(FirstAppearances, MatchesExhaustiveScan) {
    std::mt19937_64 rng(3);
    SyntheticSpec spec;
    spec.min_languages = spec.max_languages = 3;
    spec.min_years = spec.max_years = 4;
    spec.min_words = spec.max_words = 20;
    spec.max_k = 12;
    for (int trial = 0; trial < 50; ++trial) {
        auto raw = random_lists(rng, spec);
        auto corpus = to_corpus(raw);
        for (int w = 0; w < 20; ++w) {
            auto word = word_name(w);
            auto want = brute_first_appearances(raw, word);
            auto got = first_appearances(corpus, word);
            ASSERT_EQ(got.size(), want.size());
            for (const auto& [lang, fa] : got) {
                EXPECT_EQ(fa.year, want.at(lang.code()).first);
                EXPECT_EQ(fa.rank, want.at(lang.code()).second);
            }
        }
    }
}

TEST(AttributeSource, EarlierYearWins) {
    auto a = attribute_source({{A, {A, 1900, 40}}, {B, {B, 1950, 10}}});
    ASSERT_TRUE(a);
    EXPECT_EQ(a->source, A);
    EXPECT_FALSE(a->ambiguous);
}

TEST(AttributeSource, SameYearLowestRankWins) {
    auto a = attribute_source({{A, {A, 1950, 3}}, {B, {B, 1950, 5}}});
    EXPECT_EQ(a->source, A);
    EXPECT_FALSE(a->ambiguous);
    auto b = attribute_source({{A, {A, 1950, 7}}, {B, {B, 1950, 5}}});
    EXPECT_EQ(b->source, B);
}

TEST(AttributeSource, FullTieIsAmbiguous) {
    auto a = attribute_source({{B, {B, 1950, 3}}, {A, {A, 1950, 3}}});
    EXPECT_EQ(a->source, A);
    EXPECT_TRUE(a->ambiguous);
    // a tie that is not for first place is not ambiguous
    auto b = attribute_source({{A, {A, 1940, 9}}, {B, {B, 1950, 3}}, {C, {C, 1950, 3}}});
    EXPECT_EQ(b->source, A);
    EXPECT_FALSE(b->ambiguous);
}

TEST(AttributeSource, SingleLanguageIsNotMigrant) {
    EXPECT_FALSE(attribute_source({{A, {A, 1900, 1}}}));
    EXPECT_FALSE(attribute_source({}));
}

TEST(DetectMigrants, TwoLanguageCase) {
    Corpus corpus({list(A, 1900, {{"rome", 10}}), list(A, 1950, {{"rome", 10}}),
                   list(B, 1900, {{"paris", 4}}), list(B, 1950, {{"rome", 3}, {"paris", 2}})});
    auto m = detect_migrants(corpus);
    ASSERT_EQ(m.size(), 1u);
    const auto& rome = m.words()[0];
    EXPECT_EQ(rome.word, "rome");
    EXPECT_EQ(rome.source, A);
    EXPECT_EQ(rome.source_first, (FirstAppearance{A, 1900, 1}));
    EXPECT_EQ(rome.receivers, (std::map<LanguageId, Year>{{B, 1950}}));
}

TEST(DetectMigrants, VanishThenReappearStillCounts) {
    Corpus corpus({list(A, 1900, {{"rome", 10}}), list(A, 1910, {{"x", 1}}), list(B, 1920, {{"rome", 3}})});
    auto m = detect_migrants(corpus);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.words()[0].receivers.at(B), 1920);
}

TEST(DetectMigrants, ExclusionsGlobalAndPerPair) {
    Corpus corpus({list(A, 1900, {{"mayor", 5}, {"natural", 4}, {"tango", 3}}),
                   list(B, 1950, {{"mayor", 5}, {"natural", 4}, {"tango", 3}}),
                   list(C, 1960, {{"natural", 4}, {"tango", 3}})});
    ExclusionList ex;
    ex.add("Mayor", std::nullopt, std::nullopt, "polysemy");
    ex.add("natural", A, B, "origin outside the corpus");
    auto m = detect_migrants(corpus, ex);
    EXPECT_EQ(m.find("mayor"), nullptr);
    ASSERT_NE(m.find("natural"), nullptr);
    EXPECT_EQ(m.find("natural")->receivers, (std::map<LanguageId, Year>{{C, 1960}}));
    EXPECT_EQ(m.find("tango")->receivers.size(), 2u);

    ex.add("natural", std::nullopt, C);
    EXPECT_EQ(detect_migrants(corpus, ex).find("natural"), nullptr);
}

TEST(DetectMigrants, SingleLanguageYieldsNothing) {
    Corpus corpus({list(A, 1900, {{"rome", 10}}), list(A, 1950, {{"rome", 10}})});
    EXPECT_TRUE(detect_migrants(corpus).empty());
}

TEST(DetectMigrants, MatchesBruteForce) {
    std::mt19937_64 rng(5);
    SyntheticSpec spec;
    spec.min_languages = spec.max_languages = 3;
    spec.min_years = spec.max_years = 5;
    spec.min_words = spec.max_words = 50;
    for (int trial = 0; trial < 100; ++trial) {
        auto raw = random_lists(rng, spec);
        std::vector<BruteExclusion> brute_ex;
        ExclusionList ex;
        if (trial % 2) {
            brute_ex = {{word_name(1), "*", "*"}, {word_name(2), "en", "*"}, {word_name(3), "*", "fr"}};
            ex.add(word_name(1), std::nullopt, std::nullopt);
            ex.add(word_name(2), LanguageId("en"), std::nullopt);
            ex.add(word_name(3), std::nullopt, LanguageId("fr"));
        }
        auto got = detect_migrants(to_corpus(raw), ex);
        ASSERT_TRUE(same_migrants(got, brute_detect(raw, brute_ex))) << "trial " << trial;
    }
}

TEST(DetectMigrants, Invariants) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        auto raw = random_lists(rng);
        auto corpus = to_corpus(raw);
        auto m = detect_migrants(corpus);
        EXPECT_EQ(m, detect_migrants(corpus)); // deterministic
        for (const auto& w : m.words()) {
            EXPECT_FALSE(w.receivers.empty());
            EXPECT_EQ(w.receivers.count(w.source), 0u);
            for (const auto& [r, year] : w.receivers) {
                EXPECT_GE(year, w.source_first.year);
                if (year == w.source_first.year) {
                    int r_rank = corpus.find(r, year)->find(w.word)->rank;
                    EXPECT_LE(w.source_first.rank, r_rank);
                }
            }
        }
        // one source per word: A->B and B->A sets are disjoint
        for (const auto& a : corpus.languages())
            for (const auto& b : corpus.languages()) {
                if (!(a < b)) continue;
                std::set<std::string_view> ab, ba;
                for (const auto& pm : m.pair_migrants(a, b)) ab.insert(pm.word);
                for (const auto& pm : m.pair_migrants(b, a)) EXPECT_EQ(ab.count(pm.word), 0u);
            }
    }
}

TEST(DetectMigrants, UnrelatedLanguageLeavesRecordsUnchanged) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        SyntheticSpec spec;
        spec.max_languages = 4;
        auto raw = random_lists(rng, spec);
        auto before = detect_migrants(to_corpus(raw));
        auto extended = raw;
        // "zz" has vocabulary disjoint from every other language
        extended.push_back({"zz", 1900, {{"qqq", 5}, {"qqr", 4}}});
        extended.push_back({"zz", 1901, {{"qqs", 5}}});
        EXPECT_EQ(before, detect_migrants(to_corpus(extended)));
    }
}

TEST(ExclusionFile, ParsesWildcardsAndComments) {
    TempDir dir;
    std::ofstream(dir / "ex.tsv") << "# word\tsource\treceiver\tnote\n"
                                     "Mayor\t*\t*\tpolysemy (en/es)\n"
                                     "natural\ten\t*\tGreek origin\n"
                                     "pan\tes\tfr\r\n";
    auto ex = load_exclusions((dir / "ex.tsv").string());
    ASSERT_EQ(ex.entries().size(), 3u);
    EXPECT_TRUE(ex.excludes("mayor", LanguageId("fr"), LanguageId("it")));
    EXPECT_TRUE(ex.excludes("natural", LanguageId("en"), LanguageId("de")));
    EXPECT_FALSE(ex.excludes("natural", LanguageId("fr"), LanguageId("de")));
    EXPECT_TRUE(ex.excludes("pan", LanguageId("es"), LanguageId("fr")));
    EXPECT_FALSE(ex.excludes("pan", LanguageId("es"), LanguageId("it")));
    EXPECT_EQ(ex.entries()[0].note, "polysemy (en/es)");

    std::ofstream(dir / "bad.tsv") << "onlyword\n";
    EXPECT_THROW(load_exclusions((dir / "bad.tsv").string()), std::runtime_error);
    EXPECT_THROW(load_exclusions((dir / "none.tsv").string()), IoError);
}

TEST(ShippedExclusions, ExcludesListedWords) {
    auto ex = load_exclusions(std::string(MIGRANT_SOURCE_DIR) + "/data/exclusions.tsv");
    EXPECT_TRUE(ex.excludes("mayor", LanguageId("en"), LanguageId("es")));
    EXPECT_TRUE(ex.excludes("natural", LanguageId("en"), LanguageId("es")));
}
