#ifndef MIGRANT_ROBUSTNESS_HPP
#define MIGRANT_ROBUSTNESS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "migrant/corpus.hpp"
#include "migrant/flowmetrics.hpp"
#include "migrant/migration.hpp"
#include "migrant/outcome.hpp"

namespace migrant {

/// Lowest ranks are the most frequent words.
enum class Direction { LowestRanksFirst, HighestRanksFirst };

inline const char* to_string(Direction d) {
    return d == Direction::LowestRanksFirst ? "lowest-first" : "highest-first";
}

struct EliminationSpec {
    Direction direction = Direction::LowestRanksFirst;
    double proportion = 0; // R_p in [0, 1)
};

struct Elimination {
    std::vector<std::string> kept;
    std::vector<std::string> removed;
    bool clamped = false; // ceil(R_p * m) would have emptied the set
};

/// ceil(R_p * m), capped at m - 1 so one word always survives.
inline std::size_t removal_count(std::size_t m, double proportion, bool* clamped = nullptr) {
    if (!(proportion >= 0 && proportion < 1)) throw std::invalid_argument("removal proportion must be in [0, 1)");
    if (clamped) *clamped = false;
    if (m == 0) return 0;
    // the guard keeps 0.07 * 100 == 7.000000000000001 from rounding up to 8
    auto n = static_cast<std::size_t>(std::ceil(proportion * static_cast<double>(m) - 1e-9));
    if (n >= m) {
        if (clamped) *clamped = true;
        n = m - 1;
    }
    return n;
}

/// `ordered` runs from the lowest rank (most frequent) to the highest.
inline Elimination eliminate(std::span<const std::string> ordered, EliminationSpec spec) {
    Elimination out;
    std::size_t n = removal_count(ordered.size(), spec.proportion, &out.clamped);
    std::size_t m = ordered.size();
    for (std::size_t i = 0; i < m; ++i) {
        bool remove = spec.direction == Direction::LowestRanksFirst ? i < n : i >= m - n;
        (remove ? out.removed : out.kept).push_back(ordered[i]);
    }
    return out;
}

enum class SeriesError { ZeroMean, LengthMismatch, Empty };

inline const char* to_string(SeriesError e) {
    switch (e) {
    case SeriesError::ZeroMean: return "zero-mean";
    case SeriesError::LengthMismatch: return "length-mismatch";
    case SeriesError::Empty: return "empty";
    }
    return "?";
}

/// Divides each value by the series mean.
inline Outcome<std::vector<double>, SeriesError> normalize_series(std::span<const double> values) {
    if (values.empty()) return SeriesError::Empty;
    double sum = 0;
    for (double v : values) sum += v;
    double mean = sum / static_cast<double>(values.size());
    if (!(mean > 0)) return SeriesError::ZeroMean;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(v / mean);
    return out;
}

/// Mean absolute difference of two aligned (already normalized) series.
inline Outcome<double, SeriesError> average_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) return SeriesError::LengthMismatch;
    if (u.empty()) return SeriesError::Empty;
    double sum = 0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += std::abs(u[i] - v[i]);
    return sum / static_cast<double>(u.size());
}

/// Orders a pair's migrants for elimination: words in the receiver's
/// reference-year list by that list's rank, then the rest by their peak
/// frequency in the receiver over `window` (descending), then by word.
inline std::vector<std::string> reference_order(std::span<const PairMigrant> pair, const Corpus& corpus,
                                                const LanguageId& receiver, YearRange window, Year reference_year) {
    const RankedList* ref = corpus.find(receiver, reference_year);
    struct Key {
        int ref_rank; // 0 = absent from the reference list
        Count peak;
        std::string word;
    };
    std::vector<Key> keys;
    for (const auto& pm : pair) {
        Key k{0, 0, std::string(pm.word)};
        if (ref)
            if (const auto* e = ref->find(pm.word)) k.ref_rank = e->rank;
        if (k.ref_rank == 0)
            for (Year t = window.first; t <= window.last; ++t)
                if (const auto* list = corpus.find(receiver, t))
                    if (const auto* e = list->find(pm.word)) k.peak = std::max(k.peak, e->frequency);
        keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        if ((a.ref_rank == 0) != (b.ref_rank == 0)) return a.ref_rank != 0;
        if (a.ref_rank != b.ref_rank) return a.ref_rank < b.ref_rank;
        return rank_before(a.peak, a.word, b.peak, b.word);
    });
    std::vector<std::string> out;
    out.reserve(keys.size());
    for (auto& k : keys) out.push_back(std::move(k.word));
    return out;
}

struct RobustnessPoint {
    double proportion = 0;
    double avg_distance = 0;
    std::size_t removed = 0;
    bool clamped = false;
};

struct RobustnessResult {
    LanguagePair pair;
    Direction direction = Direction::LowestRanksFirst;
    std::vector<RobustnessPoint> points;
    std::size_t years_compared = 0; // N
    std::size_t words = 0;          // m
    Year reference_year = 0;
    std::vector<std::pair<double, std::string>> skipped; // R_p with the reason it has no value
    std::string degenerate_reason;                      // non-empty when nothing could be computed
};

/// R_p = 0.01, 0.02, ..., 0.99.
inline std::vector<double> default_removal_grid() {
    std::vector<double> grid;
    for (int p = 1; p <= 99; ++p) grid.push_back(p / 100.0);
    return grid;
}

inline RobustnessResult robustness_sweep(const MigrantSet& migrants, const Corpus& corpus, const LanguageId& source,
                                         const LanguageId& receiver, Direction direction,
                                         std::span<const double> grid, YearRange window, Year reference_year = 0) {
    RobustnessResult result;
    result.pair = {source, receiver};
    result.direction = direction;
    result.reference_year = reference_year != 0 ? reference_year : window.last;

    std::vector<PairMigrant> pair;
    for (const auto& pm : migrants.pair_migrants(source, receiver))
        if (pm.migrated <= window.last) pair.push_back(pm);
    result.words = pair.size();
    if (pair.empty()) {
        result.degenerate_reason = "no migrant words for pair";
        return result;
    }

    auto original = use_series_of(pair, corpus, result.pair, window);
    result.years_compared = original.points.size();
    auto u = normalize_series(original.values());
    if (!u) {
        result.degenerate_reason = std::string("original use series: ") + to_string(u.error());
        return result;
    }

    auto order = reference_order(pair, corpus, receiver, window, result.reference_year);
    for (double rp : grid) {
        auto elim = eliminate(order, {direction, rp});
        std::unordered_set<std::string_view> kept(elim.kept.begin(), elim.kept.end());
        std::vector<PairMigrant> reduced;
        for (const auto& pm : pair)
            if (kept.count(pm.word)) reduced.push_back(pm);
        auto reduced_series = use_series_of(reduced, corpus, result.pair, window);
        auto v = normalize_series(reduced_series.values());
        if (!v) {
            result.skipped.emplace_back(rp, std::string("reduced use series: ") + to_string(v.error()));
            continue;
        }
        auto d = average_distance(*u, *v);
        if (!d) {
            result.skipped.emplace_back(rp, to_string(d.error()));
            continue;
        }
        result.points.push_back({rp, *d, elim.removed.size(), elim.clamped});
    }
    return result;
}

} // namespace migrant

#endif // MIGRANT_ROBUSTNESS_HPP
