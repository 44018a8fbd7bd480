#ifndef MIGRANT_TYPES_HPP
#define MIGRANT_TYPES_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace migrant {

using Year = int;
using Count = std::uint64_t;

/// Short lowercase language code ("en", "fr", ...).
class LanguageId {
  public:
    LanguageId() = default;
    explicit LanguageId(std::string code) : code_(std::move(code)) {
        if (code_.empty()) throw std::invalid_argument("empty language code");
        for (char c : code_) {
            bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
            if (!ok) throw std::invalid_argument("language code must be lowercase ASCII: '" + code_ + "'");
        }
    }

    const std::string& code() const noexcept { return code_; }

    friend auto operator<=>(const LanguageId&, const LanguageId&) = default;
    friend bool operator==(const LanguageId&, const LanguageId&) = default;

    friend std::ostream& operator<<(std::ostream& os, const LanguageId& id) { return os << id.code_; }

  private:
    std::string code_;
};

/// Ordered (source, receiver) language pair.
struct LanguagePair {
    LanguageId source;
    LanguageId receiver;

    friend auto operator<=>(const LanguagePair&, const LanguagePair&) = default;
    friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
};

/// Unreadable or unwritable file.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct YearRange {
    Year first = 0;
    Year last = -1;

    bool empty() const noexcept { return last < first; }
    bool contains(Year y) const noexcept { return y >= first && y <= last; }
    int size() const noexcept { return empty() ? 0 : last - first + 1; }
};

} // namespace migrant

template <>
struct std::hash<migrant::LanguageId> {
    std::size_t operator()(const migrant::LanguageId& id) const noexcept {
        return std::hash<std::string>{}(id.code());
    }
};

#endif // MIGRANT_TYPES_HPP
