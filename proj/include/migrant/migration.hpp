#ifndef MIGRANT_MIGRATION_HPP
#define MIGRANT_MIGRATION_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "migrant/corpus.hpp"
#include "migrant/ingest.hpp"
#include "migrant/types.hpp"

namespace migrant {

/// Earliest year a word entered a language's top-K, and its rank that year.
struct FirstAppearance {
    LanguageId language;
    Year year = 0;
    int rank = 0;

    friend bool operator==(const FirstAppearance&, const FirstAppearance&) = default;
};

using Appearances = std::map<LanguageId, FirstAppearance>;

struct MigrantWord {
    std::string word;
    LanguageId source;
    FirstAppearance source_first;
    std::map<LanguageId, Year> receivers; // receiver -> first-migration year
    bool ambiguous_source = false;

    friend bool operator==(const MigrantWord&, const MigrantWord&) = default;
};

inline Appearances first_appearances(const Corpus& corpus, std::string_view word) {
    Appearances out;
    for (const auto& lang : corpus.languages()) {
        for (const auto& [year, list] : corpus.lists_of(lang)) {
            if (const auto* e = list.find(word)) {
                out.emplace(lang, FirstAppearance{lang, year, e->rank});
                break;
            }
        }
    }
    return out;
}

struct Attribution {
    LanguageId source;
    bool ambiguous = false;
};

/// Source = earliest first year; year ties go to the lowest rank; a remaining
/// (year, rank) tie picks the smallest language code and is flagged ambiguous.
/// nullopt when fewer than two languages contain the word.
inline std::optional<Attribution> attribute_source(const Appearances& appearances) {
    if (appearances.size() < 2) return std::nullopt;
    const FirstAppearance* best = nullptr;
    bool tied = false;
    // map iteration is in language-code order, so the first of a tie is the smallest code
    for (const auto& [_, fa] : appearances) {
        if (!best || fa.year < best->year || (fa.year == best->year && fa.rank < best->rank)) {
            best = &fa;
            tied = false;
        } else if (fa.year == best->year && fa.rank == best->rank) {
            tied = true;
        }
    }
    return Attribution{best->language, tied};
}

/// Manual corrections: `word TAB source-or-* TAB receiver-or-* TAB note`.
class ExclusionList {
  public:
    struct Entry {
        std::string word;
        std::optional<LanguageId> source;   // nullopt = any
        std::optional<LanguageId> receiver; // nullopt = any
        std::string note;
    };

    void add(std::string_view word, std::optional<LanguageId> source, std::optional<LanguageId> receiver,
             std::string note = {}) {
        auto norm = normalize_word(word);
        if (!norm) throw std::invalid_argument("exclusion word cannot be normalized: '" + std::string(word) + "'");
        by_word_[*norm].push_back(entries_.size());
        entries_.push_back({std::move(*norm), std::move(source), std::move(receiver), std::move(note)});
    }

    bool excludes(std::string_view word, const LanguageId& source, const LanguageId& receiver) const {
        auto it = by_word_.find(std::string(word));
        if (it == by_word_.end()) return false;
        for (auto idx : it->second) {
            const auto& e = entries_[idx];
            if ((!e.source || *e.source == source) && (!e.receiver || *e.receiver == receiver)) return true;
        }
        return false;
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

  private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_word_;
};

inline ExclusionList load_exclusions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read exclusion file: " + path);
    ExclusionList list;
    std::string line;
    std::size_t line_no = 0;
    auto lang_or_any = [](const std::string& f) -> std::optional<LanguageId> {
        if (f.empty() || f == "*") return std::nullopt;
        return LanguageId(f);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() < 3)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected word, source, receiver");
        try {
            list.add(fields[0], lang_or_any(fields[1]), lang_or_any(fields[2]), fields.size() > 3 ? fields[3] : "");
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return list;
}

/// A migrant word as seen from one (source, receiver) pair.
struct PairMigrant {
    std::string_view word;
    Year migrated = 0;
};

/// Detected migrant words, ordered by word.
class MigrantSet {
  public:
    MigrantSet() = default;
    explicit MigrantSet(std::vector<MigrantWord> words) : words_(std::move(words)) {
        std::sort(words_.begin(), words_.end(), [](const auto& a, const auto& b) { return a.word < b.word; });
    }

    const std::vector<MigrantWord>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

    const MigrantWord* find(std::string_view word) const {
        auto it = std::lower_bound(words_.begin(), words_.end(), word,
                                   [](const MigrantWord& m, std::string_view w) { return m.word < w; });
        return (it != words_.end() && it->word == word) ? &*it : nullptr;
    }

    /// Words with the given source that reached `receiver`, ordered by word.
    std::vector<PairMigrant> pair_migrants(const LanguageId& source, const LanguageId& receiver) const {
        std::vector<PairMigrant> out;
        for (const auto& m : words_) {
            if (m.source != source) continue;
            if (auto it = m.receivers.find(receiver); it != m.receivers.end()) out.push_back({m.word, it->second});
        }
        return out;
    }

    friend bool operator==(const MigrantSet&, const MigrantSet&) = default;

  private:
    std::vector<MigrantWord> words_;
};

/// Finds every word present (over all years) in at least two languages'
/// top-K lists, attributes its source, and drops excluded (word, receiver)
/// pairs. Words left without receivers are dropped.
inline MigrantSet detect_migrants(const Corpus& corpus, const ExclusionList& exclusions = {}) {
    std::unordered_map<std::string_view, Appearances> index;
    for (const auto& lang : corpus.languages()) {
        for (const auto& [year, list] : corpus.lists_of(lang)) {
            for (const auto& e : list.entries()) {
                auto& apps = index[e.word];
                apps.try_emplace(lang, FirstAppearance{lang, year, e.rank});
            }
        }
    }
    std::vector<MigrantWord> out;
    for (auto& [word, apps] : index) {
        auto attribution = attribute_source(apps);
        if (!attribution) continue;
        MigrantWord m;
        m.word = std::string(word);
        m.source = attribution->source;
        m.source_first = apps.at(m.source);
        m.ambiguous_source = attribution->ambiguous;
        for (const auto& [lang, fa] : apps) {
            if (lang == m.source || exclusions.excludes(m.word, m.source, lang)) continue;
            m.receivers.emplace(lang, fa.year);
        }
        if (!m.receivers.empty()) out.push_back(std::move(m));
    }
    return MigrantSet(std::move(out));
}

} // namespace migrant

#endif // MIGRANT_MIGRATION_HPP
