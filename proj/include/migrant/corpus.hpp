#ifndef MIGRANT_CORPUS_HPP
#define MIGRANT_CORPUS_HPP

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "migrant/ranked_list.hpp"
#include "migrant/types.hpp"

namespace migrant {

/// Immutable snapshot: one RankedList per (language, year) present in the data.
/// Absent combinations are simply not stored; find() returns nullptr for them.
class Corpus {
  public:
    Corpus() = default;

    explicit Corpus(std::vector<RankedList> lists) {
        for (auto& list : lists) {
            auto lang = list.language();
            Year year = list.year();
            auto [it, inserted] = lists_[lang].emplace(year, std::move(list));
            if (!inserted)
                throw std::invalid_argument("duplicate ranked list for " + lang.code() + " " + std::to_string(year));
            languages_.insert(lang);
        }
    }

    const std::set<LanguageId>& languages() const noexcept { return languages_; }

    bool has_language(const LanguageId& lang) const { return languages_.count(lang) != 0; }

    const RankedList* find(const LanguageId& lang, Year year) const {
        auto lit = lists_.find(lang);
        if (lit == lists_.end()) return nullptr;
        auto yit = lit->second.find(year);
        return yit == lit->second.end() ? nullptr : &yit->second;
    }

    /// Lists of one language keyed by year, ascending.
    const std::map<Year, RankedList>& lists_of(const LanguageId& lang) const {
        static const std::map<Year, RankedList> none;
        auto it = lists_.find(lang);
        return it == lists_.end() ? none : it->second;
    }

    std::vector<Year> years_of(const LanguageId& lang) const {
        std::vector<Year> out;
        for (const auto& [y, _] : lists_of(lang)) out.push_back(y);
        return out;
    }

    std::size_t list_count() const {
        std::size_t n = 0;
        for (const auto& [_, by_year] : lists_) n += by_year.size();
        return n;
    }

    template <class F>
    void for_each_list(F&& f) const {
        for (const auto& [_, by_year] : lists_)
            for (const auto& [__, list] : by_year) f(list);
    }

  private:
    std::map<LanguageId, std::map<Year, RankedList>> lists_;
    std::set<LanguageId> languages_;
};

} // namespace migrant

#endif // MIGRANT_CORPUS_HPP
