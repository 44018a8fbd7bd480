#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "migrant/flowmetrics.hpp"
#include "support/synthetic.hpp"

using namespace migrant;
using namespace migrant::synth;

namespace {

const LanguageId EN("en"), FR("fr"), ES("es");

MigrantWord mw(std::string word, const LanguageId& source, Year source_year,
                    std::map<LanguageId, Year> receivers) {
    return {std::move(word), source, {source, source_year, 1}, std::move(receivers), false};
}

RankedList list(const LanguageId& lang, Year year, std::vector<std::pair<std::string, Count>> words) {
    std::sort(words.begin(), words.end(),
              [](const auto& a, const auto& b) { return rank_before(a.second, a.first, b.second, b.first); });
    std::vector<RankedEntry> e;
    for (std::size_t i = 0; i < words.size(); ++i) e.push_back({words[i].first, words[i].second, int(i) + 1});
    return RankedList(lang, year, std::move(e));
}

} // namespace

TEST(Decade, CalendarAligned) {
    EXPECT_EQ(Decade::of(1900).start, 1900);
    EXPECT_EQ(Decade::of(1909).start, 1900);
    EXPECT_EQ(Decade::of(1910).start, 1910);
    EXPECT_TRUE(Decade{1990}.contains(1999));
    EXPECT_FALSE(Decade{1990}.contains(2000));
    EXPECT_THROW(Decade::starting(1995), std::invalid_argument);
}

TEST(NewMigrantWords, DecadeMembership) {
    MigrantSet m({mw("internet", EN, 1985, {{FR, 1991}})});
    auto in90s = new_migrant_words(m, EN, FR, Decade{1990});
    EXPECT_EQ(in90s.count, 1u);
    EXPECT_EQ(in90s.words, std::vector<std::string>{"internet"});
    EXPECT_EQ(new_migrant_words(m, EN, FR, Decade{1980}).count, 0u);
    EXPECT_EQ(new_migrant_words(m, FR, EN, Decade{1990}).count, 0u);
    EXPECT_THROW(new_migrant_words(m, EN, EN, Decade{1990}), std::invalid_argument);
}

TEST(NmwMarginals, SumOverReceivers) {
    MigrantSet m({mw("a", EN, 1900, {{FR, 1951}, {ES, 1952}}), mw("b", EN, 1900, {{FR, 1953}, {ES, 1950}}),
                  mw("c", EN, 1900, {{FR, 1959}, {ES, 1959}}), mw("d", FR, 1900, {{EN, 1955}})});
    EXPECT_EQ(nmw_out(m, EN, Decade{1950}), 6u);
    EXPECT_EQ(nmw_out(m, ES, Decade{1950}), 0u);
    EXPECT_EQ(nmw_out(m, EN, Decade{1960}), 0u);
    auto in = nmw_in(m, FR, Decade{1950});
    EXPECT_EQ(in, (std::map<LanguageId, std::size_t>{{EN, 3}}));
}

TEST(NmwMarginals, MatchBruteForceAndConserve) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        SyntheticSpec spec;
        spec.max_years = 25; // spans several decades
        auto raw = random_lists(rng, spec);
        auto corpus = to_corpus(raw);
        auto m = detect_migrants(corpus);
        auto brute = brute_detect(raw);
        std::size_t total_pairs = 0;
        for (const auto& b : brute) total_pairs += b.receivers.size();

        std::size_t counted = 0;
        for (Year d = 1900; d <= 1920; d += 10) {
            for (const auto& a : corpus.languages()) {
                std::size_t conserved = 0;
                for (const auto& b : corpus.languages()) {
                    if (a == b) continue;
                    auto fc = new_migrant_words(m, a, b, Decade{d});
                    std::size_t want = 0;
                    for (const auto& bm : brute)
                        if (bm.source == a.code() && bm.receivers.count(b.code()) &&
                            bm.receivers.at(b.code()) / 10 * 10 == d)
                            ++want;
                    ASSERT_EQ(fc.count, want);
                    ASSERT_EQ(fc.count, fc.words.size());
                    counted += fc.count;
                    auto in = nmw_in(m, b, Decade{d});
                    conserved += in.count(a) ? in.at(a) : 0;
                }
                ASSERT_EQ(conserved, nmw_out(m, a, Decade{d}));
            }
        }
        // every (word, receiver) pair lands in exactly one decade
        EXPECT_EQ(counted, total_pairs);
    }
}

TEST(AccumulatedMigrants, RequiresMigrationAndPresence) {
    MigrantSet m({mw("dollar", EN, 1900, {{FR, 1950}}), mw("jazz", EN, 1900, {{FR, 1950}}),
                  mw("later", EN, 1900, {{FR, 1965}})});
    Corpus corpus({list(FR, 1960, {{"dollar", 120}, {"later", 50}, {"pain", 300}}), list(FR, 1970, {})});
    auto acc = accumulated_migrants(m, corpus, EN, FR, 1960);
    ASSERT_TRUE(acc);
    EXPECT_EQ(*acc, (std::vector<AccumulatedWord>{{"dollar", 120}}));
    auto absent = accumulated_migrants(m, corpus, EN, FR, 1961);
    ASSERT_FALSE(absent);
    EXPECT_EQ(absent.error(), UseGap::AbsentYear);
    EXPECT_TRUE(accumulated_migrants(m, corpus, EN, FR, 1970)->empty());
}

TEST(AccumulatedMigrants, MatchSetIntersection) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto raw = random_lists(rng);
        auto corpus = to_corpus(raw);
        auto m = detect_migrants(corpus);
        auto brute = brute_detect(raw);
        for (const auto& r : raw) {
            for (const auto& a : corpus.languages()) {
                if (a.code() == r.language) continue;
                std::set<std::string> migrated;
                for (const auto& bm : brute)
                    if (bm.source == a.code() && bm.receivers.count(r.language) &&
                        bm.receivers.at(r.language) <= r.year)
                        migrated.insert(bm.word);
                std::vector<AccumulatedWord> want;
                for (const auto& [w, f] : r.words)
                    if (migrated.count(w)) want.push_back({w, f});
                std::sort(want.begin(), want.end(), [](const auto& x, const auto& y) { return x.word < y.word; });
                auto got = accumulated_migrants(m, corpus, a, LanguageId(r.language), r.year);
                ASSERT_TRUE(got);
                ASSERT_EQ(*got, want);
            }
        }
    }
}

TEST(Use, DirectRatio) {
    MigrantSet m({mw("a", EN, 1900, {{FR, 1950}}), mw("b", EN, 1900, {{FR, 1950}})});
    Corpus corpus({list(FR, 1960, {{"a", 30}, {"b", 20}, {"x", 950}})});
    auto u = use(m, corpus, EN, FR, 1960);
    ASSERT_TRUE(u);
    EXPECT_EQ(*u, 0.05);
    EXPECT_EQ(*use(m, corpus, ES, FR, 1960), 0.0);
}

TEST(Use, UndefinedSignals) {
    MigrantSet m({mw("a", EN, 1900, {{FR, 1950}})});
    Corpus corpus({list(FR, 1960, {}), list(FR, 1961, {{"a", 0}, {"b", 0}})});
    EXPECT_EQ(use(m, corpus, EN, FR, 1959).error(), UseGap::AbsentYear);
    EXPECT_EQ(use(m, corpus, EN, FR, 1960).error(), UseGap::EmptyList);
    EXPECT_EQ(use(m, corpus, EN, FR, 1961).error(), UseGap::EmptyList);
}

TEST(Use, BoundedAndScaleInvariant) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        auto raw = random_lists(rng);
        auto corpus = to_corpus(raw);
        auto m = detect_migrants(corpus);
        Count scale = std::uniform_int_distribution<Count>(2, 1000)(rng);
        auto scaled_raw = raw;
        for (auto& r : scaled_raw)
            for (auto& [w, f] : r.words) f *= scale;
        auto scaled = to_corpus(scaled_raw);
        for (const auto& r : raw)
            for (const auto& a : corpus.languages()) {
                if (a.code() == r.language) continue;
                auto u = use(m, corpus, a, LanguageId(r.language), r.year);
                auto us = use(m, scaled, a, LanguageId(r.language), r.year);
                ASSERT_EQ(bool(u), bool(us));
                if (!u) continue;
                EXPECT_GE(*u, 0.0);
                EXPECT_LE(*u, 1.0);
                EXPECT_NEAR(*u, *us, 1e-12 * std::max(1.0, *u));
            }
    }
}

TEST(UseSeries, GapsAndComposition) {
    MigrantSet m({mw("a", EN, 1900, {{FR, 1950}})});
    Corpus corpus({list(FR, 1950, {{"a", 1}, {"x", 3}}), list(FR, 1952, {{"a", 2}, {"x", 2}})});
    auto s = use_series(m, corpus, EN, FR, {1950, 1952});
    ASSERT_EQ(s.points.size(), 2u);
    EXPECT_EQ(s.points[0], (std::pair<Year, double>{1950, 0.25}));
    EXPECT_EQ(s.points[1], (std::pair<Year, double>{1952, 0.5}));
    ASSERT_EQ(s.gaps.size(), 1u);
    EXPECT_EQ(s.gaps[0].first, 1951);
    for (const auto& [y, v] : s.points) EXPECT_EQ(v, *use(m, corpus, EN, FR, y));
}

TEST(UseSeries, ConstantCorpusGivesConstantSeries) {
    MigrantSet m({mw("a", EN, 1900, {{FR, 1900}})});
    std::vector<RankedList> lists;
    for (Year y = 1950; y <= 1952; ++y) lists.push_back(list(FR, y, {{"a", 7}, {"b", 5}, {"c", 1}}));
    auto s = use_series(m, Corpus(std::move(lists)), EN, FR, {1950, 1952});
    ASSERT_EQ(s.points.size(), 3u);
    for (const auto& p : s.points) EXPECT_EQ(p.second, s.points[0].second);
}

TEST(UseSeries, GrowingNumeratorIsNonDecreasing) {
    // fixed denominator 1000; migrant mass grows every year
    MigrantSet m({mw("a", EN, 1900, {{FR, 1950}}), mw("b", EN, 1900, {{FR, 1953}})});
    std::vector<RankedList> lists;
    for (int i = 0; i < 8; ++i) {
        Count fa = 100 + 20 * i;
        Count fb = i >= 3 ? 10 * i : 0;
        std::vector<std::pair<std::string, Count>> words = {{"a", fa}, {"filler", 1000 - fa - fb}};
        if (fb) words.emplace_back("b", fb);
        lists.push_back(list(FR, 1950 + i, words));
    }
    auto s = use_series(m, Corpus(std::move(lists)), EN, FR, {1950, 1957});
    ASSERT_EQ(s.points.size(), 8u);
    for (std::size_t i = 1; i < s.points.size(); ++i) EXPECT_GE(s.points[i].second, s.points[i - 1].second);
}

namespace {

ZipfResult power_law_curve(double alpha, int n, Count c = 1'000'000'000) {
    std::vector<MigrantWord> words;
    std::vector<std::pair<std::string, Count>> entries;
    for (int r = 1; r <= n; ++r) {
        auto w = word_name(r);
        words.push_back(mw(w, EN, 1900, {{FR, 1950}}));
        entries.emplace_back(w, static_cast<Count>(std::llround(c / std::pow(r, alpha))));
    }
    Corpus corpus({list(FR, 2000, entries)});
    return zipf_curve(MigrantSet(std::move(words)), corpus, EN, FR, 2000);
}

} // namespace

TEST(ZipfCurve, ExactPowerLawSlope) {
    auto r1 = power_law_curve(1.0, 100);
    ASSERT_TRUE(r1.fit);
    EXPECT_NEAR(r1.fit->slope, -1.0, 0.01);
    auto r12 = power_law_curve(1.2, 100);
    ASSERT_TRUE(r12.fit);
    EXPECT_NEAR(r12.fit->slope, -1.2, 0.02);
    EXPECT_EQ(r12.fit->first_rank, 3);
    EXPECT_EQ(r12.fit->last_rank, 100);
}

TEST(ZipfCurve, RankedNonIncreasing) {
    auto r = power_law_curve(1.0, 50);
    for (std::size_t i = 0; i < r.curve.points.size(); ++i) {
        EXPECT_EQ(r.curve.points[i].rank, static_cast<int>(i) + 1);
        if (i) {
            EXPECT_LE(r.curve.points[i].frequency, r.curve.points[i - 1].frequency);
        }
    }
}

TEST(ZipfCurve, TooFewWordsStillReturnsCurve) {
    auto r = power_law_curve(1.0, 3);
    EXPECT_EQ(r.curve.points.size(), 3u);
    ASSERT_FALSE(r.fit);
    EXPECT_EQ(r.fit.error(), ZipfRefusal::TooFewWords);
}

TEST(ZipfCurve, AbsentYear) {
    MigrantSet m({mw("a", EN, 1900, {{FR, 1950}})});
    auto r = zipf_curve(m, Corpus({list(FR, 1950, {{"a", 1}})}), EN, FR, 1999);
    EXPECT_TRUE(r.curve.points.empty());
    EXPECT_EQ(r.fit.error(), ZipfRefusal::AbsentYear);
}

TEST(ZipfCurve, FlatHeadIsTrimmed) {
    std::vector<ZipfPoint> pts;
    for (int r = 1; r <= 20; ++r) pts.push_back({r, r <= 4 ? Count(50000) : Count(100000 / r), ""});
    auto fit = fit_loglog(pts, ZipfOptions{});
    ASSERT_TRUE(fit);
    EXPECT_EQ(fit->first_rank, 5);
    EXPECT_NEAR(fit->slope, -1.0, 0.01);
    ZipfOptions no_trim;
    no_trim.drop_head_ties = false;
    EXPECT_EQ(fit_loglog(pts, no_trim)->first_rank, 3);
}
