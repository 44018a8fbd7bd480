#ifndef MIGRANT_RANKED_LIST_HPP
#define MIGRANT_RANKED_LIST_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "migrant/types.hpp"

namespace migrant {

struct RankedEntry {
    std::string word;
    Count frequency = 0;
    int rank = 0;

    friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Top-K words of one (language, year), rank 1 most frequent.
///
/// Construction validates the ordering invariants, so every RankedList in the
/// program has consecutive ranks, non-increasing frequencies and distinct words.
class RankedList {
  public:
    RankedList() = default;

    RankedList(LanguageId language, Year year, std::vector<RankedEntry> entries)
        : language_(std::move(language)), year_(year), entries_(std::move(entries)) {
        index_.reserve(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            if (e.rank != static_cast<int>(i) + 1)
                throw std::invalid_argument("ranked list: ranks must be consecutive from 1");
            if (i > 0 && e.frequency > entries_[i - 1].frequency)
                throw std::invalid_argument("ranked list: frequency increases with rank at '" + e.word + "'");
            if (!index_.emplace(e.word, i).second)
                throw std::invalid_argument("ranked list: duplicate word '" + e.word + "'");
            total_ += e.frequency;
        }
    }

    const LanguageId& language() const noexcept { return language_; }
    Year year() const noexcept { return year_; }
    const std::vector<RankedEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Sum of all entry frequencies (the use denominator).
    Count total_frequency() const noexcept { return total_; }

    const RankedEntry* find(std::string_view word) const {
        auto it = index_.find(std::string(word));
        return it == index_.end() ? nullptr : &entries_[it->second];
    }

    friend bool operator==(const RankedList& a, const RankedList& b) {
        return a.language_ == b.language_ && a.year_ == b.year_ && a.entries_ == b.entries_;
    }

  private:
    LanguageId language_;
    Year year_ = 0;
    std::vector<RankedEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    Count total_ = 0;
};

/// Ranking order: frequency descending, then word ascending (bytewise).
inline bool rank_before(Count fa, std::string_view wa, Count fb, std::string_view wb) {
    if (fa != fb) return fa > fb;
    return wa < wb;
}

/// Ranks (word, frequency) pairs by rank_before and keeps the first `k`
/// (k == 0 keeps all).
inline std::vector<RankedEntry> rank_words(std::vector<std::pair<std::string, Count>> words, std::size_t k) {
    auto cmp = [](const auto& a, const auto& b) { return rank_before(a.second, a.first, b.second, b.first); };
    std::size_t keep = (k == 0) ? words.size() : std::min(k, words.size());
    std::partial_sort(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(keep), words.end(), cmp);
    std::vector<RankedEntry> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        out.push_back({std::move(words[i].first), words[i].second, static_cast<int>(i) + 1});
    return out;
}

} // namespace migrant

#endif // MIGRANT_RANKED_LIST_HPP
