#ifndef MIGRANT_INGEST_HPP
#define MIGRANT_INGEST_HPP

#include <charconv>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "migrant/ranked_list.hpp"
#include "migrant/types.hpp"
#include "migrant/unicode.hpp"

namespace migrant {

/// Canonical form used for cross-language matching: simple case folding,
/// diacritics kept, letters plus internal apostrophes/hyphens only.
/// Returns nullopt for tokens that are not plain words (digits, punctuation,
/// POS-tagged forms such as "market_NOUN", malformed UTF-8).
inline std::optional<std::string> normalize_word(std::string_view raw) {
    if (raw.empty()) return std::nullopt;
    std::string out;
    out.reserve(raw.size());
    std::size_t pos = 0;
    bool prev_joiner = true; // start of token behaves like a joiner: no leading ' or -
    bool any_letter = false;
    while (pos < raw.size()) {
        char32_t cp = unicode::decode_next(raw, pos);
        if (cp == unicode::kInvalid) return std::nullopt;
        if (cp == 0x2019) cp = '\'';
        if (cp == '\'' || cp == '-') {
            if (prev_joiner) return std::nullopt;
            prev_joiner = true;
            out.push_back(static_cast<char>(cp));
            continue;
        }
        if (unicode::is_combining_mark(cp)) {
            if (prev_joiner) return std::nullopt;
            unicode::append_utf8(out, cp);
            continue;
        }
        if (!unicode::is_letter(cp)) return std::nullopt;
        unicode::append_utf8(out, unicode::fold(cp));
        prev_joiner = false;
        any_letter = true;
    }
    if (prev_joiner || !any_letter) return std::nullopt;
    return out;
}

struct NgramRecord {
    std::string word;
    Year year = 0;
    Count count = 0;

    friend bool operator==(const NgramRecord&, const NgramRecord&) = default;
};

/// Token rejected by normalization, or a blank line.
struct SkippedLine {};

struct ParseError {
    std::size_t line = 0;
    std::string message;
};

using ParsedLine = std::variant<NgramRecord, SkippedLine, ParseError>;

namespace detail {

template <class Int>
bool parse_int(std::string_view s, Int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace detail

/// Parses one `ngram TAB year TAB match_count TAB volume_count` record.
inline ParsedLine parse_shard_line(std::string_view line, std::size_t line_no = 0) {
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) return SkippedLine{};

    std::string_view fields[4];
    std::size_t n = 0;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (n == 4) return ParseError{line_no, "expected 4 tab-separated fields, got more"};
        fields[n++] = line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    if (n != 4) return ParseError{line_no, "expected 4 tab-separated fields, got " + std::to_string(n)};

    NgramRecord rec;
    Count volumes = 0;
    if (!detail::parse_int(fields[1], rec.year))
        return ParseError{line_no, "non-numeric year '" + std::string(fields[1]) + "'"};
    if (!detail::parse_int(fields[2], rec.count))
        return ParseError{line_no, "non-numeric match_count '" + std::string(fields[2]) + "'"};
    if (!detail::parse_int(fields[3], volumes))
        return ParseError{line_no, "non-numeric volume_count '" + std::string(fields[3]) + "'"};

    auto word = normalize_word(fields[0]);
    if (!word) return SkippedLine{};
    rec.word = std::move(*word);
    return rec;
}

/// Functional words removed before ranking, per language.
class StopwordSet {
  public:
    StopwordSet() = default;
    StopwordSet(LanguageId language, const std::vector<std::string>& words) : language_(std::move(language)) {
        for (const auto& w : words) add(w);
    }

    /// Normalizes `raw` the same way corpus words are; unnormalizable entries are ignored.
    void add(std::string_view raw) {
        if (auto w = normalize_word(raw)) words_.insert(std::move(*w));
    }

    bool contains(std::string_view normalized) const { return words_.count(std::string(normalized)) != 0; }
    const LanguageId& language() const noexcept { return language_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::unordered_set<std::string>& words() const noexcept { return words_; }

  private:
    LanguageId language_;
    std::unordered_set<std::string> words_;
};

/// Reads a stopword file: UTF-8, one word per line, '#' starts a comment.
inline StopwordSet load_stopwords(const std::string& path, const LanguageId& language) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read stopword file: " + path);
    StopwordSet set(language, {});
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        set.add(std::string_view(line).substr(first, last - first + 1));
    }
    return set;
}

/// Aggregates counts for one (language, year) group. Memory is proportional
/// to the group's distinct vocabulary, not to the number of records fed.
class RankedListBuilder {
  public:
    void add(std::string_view word, Count count) {
        auto it = counts_.find(word);
        if (it == counts_.end())
            counts_.emplace(std::string(word), count);
        else
            it->second += count;
    }
    void add(const NgramRecord& rec) { add(rec.word, rec.count); }

    std::size_t vocabulary_size() const noexcept { return counts_.size(); }

    RankedList finish(const LanguageId& language, Year year, const StopwordSet& stopwords, std::size_t k) && {
        if (k == 0) throw std::invalid_argument("K must be at least 1");
        // rank pointers into the map so peak memory stays one map, not two copies
        using Entry = std::pair<const std::string, Count>;
        std::vector<const Entry*> words;
        words.reserve(counts_.size());
        for (const auto& e : counts_)
            if (!stopwords.contains(e.first)) words.push_back(&e);
        std::size_t keep = std::min(k, words.size());
        std::partial_sort(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(keep), words.end(),
                          [](const Entry* a, const Entry* b) { return rank_before(a->second, a->first, b->second, b->first); });
        std::vector<RankedEntry> entries;
        entries.reserve(keep);
        for (std::size_t i = 0; i < keep; ++i)
            entries.push_back({words[i]->first, words[i]->second, static_cast<int>(i) + 1});
        counts_.clear();
        return RankedList(language, year, std::move(entries));
    }

  private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };
    std::unordered_map<std::string, Count, Hash, std::equal_to<>> counts_;
};

/// Builds the top-K list of one (language, year) from its records. The result
/// does not depend on record order.
template <class Records>
RankedList build_ranked_list(const LanguageId& language, Year year, const Records& records,
                             const StopwordSet& stopwords, std::size_t k) {
    RankedListBuilder builder;
    for (const NgramRecord& rec : records) {
        if (rec.year != year) throw std::invalid_argument("record year does not match list year");
        builder.add(rec);
    }
    return std::move(builder).finish(language, year, stopwords, k);
}

} // namespace migrant

#endif // MIGRANT_INGEST_HPP
