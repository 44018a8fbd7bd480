#ifndef MIGRANT_FLOWMETRICS_HPP
#define MIGRANT_FLOWMETRICS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "migrant/corpus.hpp"
#include "migrant/migration.hpp"
#include "migrant/outcome.hpp"
#include "migrant/types.hpp"

namespace migrant {

/// Calendar decade [start, start + 9]; the 1900s are 1900..1909.
struct Decade {
    Year start = 0;

    static Decade of(Year y) {
        Year q = y / 10;
        if (y % 10 != 0 && y < 0) --q;
        return Decade{q * 10};
    }
    static Decade starting(Year start) {
        if (start % 10 != 0) throw std::invalid_argument("decade start must be divisible by 10");
        return Decade{start};
    }
    bool contains(Year y) const noexcept { return y >= start && y <= start + 9; }

    friend auto operator<=>(const Decade&, const Decade&) = default;
};

// ---------------------------------------------------------------------------
// New migrant words

struct FlowCount {
    LanguageId source;
    LanguageId receiver;
    Decade decade;
    std::size_t count = 0;
    std::vector<std::string> words; // sorted
};

/// Words from `source` whose first appearance in `receiver` falls in `decade`.
inline FlowCount new_migrant_words(const MigrantSet& migrants, const LanguageId& source, const LanguageId& receiver,
                                   Decade decade) {
    if (source == receiver) throw std::invalid_argument("source and receiver must differ");
    FlowCount fc{source, receiver, decade, 0, {}};
    for (const auto& pm : migrants.pair_migrants(source, receiver))
        if (decade.contains(pm.migrated)) fc.words.emplace_back(pm.word);
    fc.count = fc.words.size();
    return fc;
}

/// Exports of `language` in `decade`, summed over all receivers.
inline std::size_t nmw_out(const MigrantSet& migrants, const LanguageId& language, Decade decade) {
    std::size_t n = 0;
    for (const auto& m : migrants.words()) {
        if (m.source != language) continue;
        for (const auto& [_, year] : m.receivers) n += decade.contains(year) ? 1 : 0;
    }
    return n;
}

/// Imports of `language` in `decade`, per source language (sources with zero omitted).
inline std::map<LanguageId, std::size_t> nmw_in(const MigrantSet& migrants, const LanguageId& language,
                                                Decade decade) {
    std::map<LanguageId, std::size_t> out;
    for (const auto& m : migrants.words()) {
        auto it = m.receivers.find(language);
        if (it != m.receivers.end() && decade.contains(it->second)) ++out[m.source];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Accumulated migrant words and use

enum class UseGap {
    AbsentYear, // no list for (receiver, year)
    EmptyList,  // list present but empty: use undefined
};

inline const char* to_string(UseGap g) {
    return g == UseGap::AbsentYear ? "absent-year" : "empty-list";
}

struct AccumulatedWord {
    std::string word;
    Count frequency = 0;

    friend bool operator==(const AccumulatedWord&, const AccumulatedWord&) = default;
};

/// Pair migrants that reached the receiver by `list.year()` and are in `list`,
/// with their frequencies, ordered by word.
inline std::vector<AccumulatedWord> accumulated_in(std::span<const PairMigrant> pair, const RankedList& list) {
    std::vector<AccumulatedWord> out;
    for (const auto& pm : pair) {
        if (pm.migrated > list.year()) continue;
        if (const auto* e = list.find(pm.word)) out.push_back({std::string(pm.word), e->frequency});
    }
    return out;
}

inline Outcome<std::vector<AccumulatedWord>, UseGap> accumulated_migrants(const MigrantSet& migrants,
                                                                        const Corpus& corpus,
                                                                        const LanguageId& source,
                                                                        const LanguageId& receiver, Year t) {
    const auto* list = corpus.find(receiver, t);
    if (!list) return UseGap::AbsentYear;
    auto pair = migrants.pair_migrants(source, receiver);
    return accumulated_in(pair, *list);
}

/// Integer terms of the use ratio; divided once at the end.
struct UseTerms {
    Count numerator = 0;
    Count denominator = 0;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

inline Outcome<UseTerms, UseGap> use_terms(std::span<const PairMigrant> pair, const RankedList* list) {
    if (!list) return UseGap::AbsentYear;
    if (list->empty() || list->total_frequency() == 0) return UseGap::EmptyList;
    UseTerms terms{0, list->total_frequency()};
    for (const auto& w : accumulated_in(pair, *list)) terms.numerator += w.frequency;
    return terms;
}

/// Share of the receiver's year-t top-K mass carried by accumulated migrants
/// from `source`.
inline Outcome<double, UseGap> use(const MigrantSet& migrants, const Corpus& corpus, const LanguageId& source,
                                   const LanguageId& receiver, Year t) {
    auto pair = migrants.pair_migrants(source, receiver);
    auto terms = use_terms(pair, corpus.find(receiver, t));
    if (!terms) return terms.error();
    return terms->value();
}

struct UseSeries {
    LanguagePair pair;
    std::vector<std::pair<Year, double>> points;
    std::vector<std::pair<Year, UseGap>> gaps;

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(points.size());
        for (const auto& p : points) v.push_back(p.second);
        return v;
    }
};

inline UseSeries use_series_of(std::span<const PairMigrant> pair, const Corpus& corpus, const LanguagePair& lp,
                               YearRange range) {
    UseSeries s{lp, {}, {}};
    for (Year t = range.first; t <= range.last; ++t) {
        auto terms = use_terms(pair, corpus.find(lp.receiver, t));
        if (terms)
            s.points.emplace_back(t, terms->value());
        else
            s.gaps.emplace_back(t, terms.error());
    }
    return s;
}

inline UseSeries use_series(const MigrantSet& migrants, const Corpus& corpus, const LanguageId& source,
                            const LanguageId& receiver, YearRange range) {
    auto pair = migrants.pair_migrants(source, receiver);
    return use_series_of(pair, corpus, {source, receiver}, range);
}

// ---------------------------------------------------------------------------
// Zipf curves

struct ZipfPoint {
    int rank = 0;
    Count frequency = 0;
    std::string word;
};

struct ZipfCurve {
    LanguagePair pair;
    Year year = 0;
    std::vector<ZipfPoint> points;
};

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    int first_rank = 0;
    int last_rank = 0;
    std::size_t n_points = 0;
};

struct ZipfOptions {
    int min_rank = 3;
    int max_rank = 0; // 0 = through the last rank
    bool drop_head_ties = true;
    std::size_t min_words = 5;
};

enum class ZipfRefusal { AbsentYear, TooFewWords, TooFewFitPoints };

inline const char* to_string(ZipfRefusal r) {
    switch (r) {
    case ZipfRefusal::AbsentYear: return "absent-year";
    case ZipfRefusal::TooFewWords: return "too-few-words";
    case ZipfRefusal::TooFewFitPoints: return "too-few-fit-points";
    }
    return "?";
}

struct ZipfResult {
    ZipfCurve curve;
    Outcome<LineFit, ZipfRefusal> fit;
};

/// Least squares of log10(frequency) on log10(rank) over [first, last].
inline Outcome<LineFit, ZipfRefusal> fit_loglog(const std::vector<ZipfPoint>& points, const ZipfOptions& opt) {
    if (points.size() < opt.min_words) return ZipfRefusal::TooFewWords;
    int first = std::max(opt.min_rank, 1);
    if (opt.drop_head_ties) {
        // skip a flat head: ranks sharing the top frequency
        int flat = 0;
        while (flat < static_cast<int>(points.size()) && points[flat].frequency == points[0].frequency) ++flat;
        if (flat > 1) first = std::max(first, flat + 1);
    }
    int last = static_cast<int>(points.size());
    if (opt.max_rank > 0) last = std::min(last, opt.max_rank);

    double sx = 0, sy = 0;
    std::size_t n = 0;
    for (int r = first; r <= last; ++r) {
        if (points[r - 1].frequency == 0) continue;
        sx += std::log10(static_cast<double>(r));
        sy += std::log10(static_cast<double>(points[r - 1].frequency));
        ++n;
    }
    if (n < 2) return ZipfRefusal::TooFewFitPoints;
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int r = first; r <= last; ++r) {
        if (points[r - 1].frequency == 0) continue;
        double dx = std::log10(static_cast<double>(r)) - mx;
        double dy = std::log10(static_cast<double>(points[r - 1].frequency)) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.first_rank = first;
    fit.last_rank = last;
    fit.n_points = n;
    return fit;
}

/// Accumulated migrants re-ranked by frequency, plus a log-log slope fit.
inline ZipfResult zipf_curve(const MigrantSet& migrants, const Corpus& corpus, const LanguageId& source,
                             const LanguageId& receiver, Year year, const ZipfOptions& opt = {}) {
    ZipfCurve curve{{source, receiver}, year, {}};
    auto acc = accumulated_migrants(migrants, corpus, source, receiver, year);
    if (!acc) return {std::move(curve), ZipfRefusal::AbsentYear};
    auto words = *acc;
    std::sort(words.begin(), words.end(),
              [](const auto& a, const auto& b) { return rank_before(a.frequency, a.word, b.frequency, b.word); });
    for (std::size_t i = 0; i < words.size(); ++i)
        curve.points.push_back({static_cast<int>(i) + 1, words[i].frequency, std::move(words[i].word)});
    auto fit = fit_loglog(curve.points, opt);
    return {std::move(curve), std::move(fit)};
}

} // namespace migrant

#endif // MIGRANT_FLOWMETRICS_HPP
