#ifndef MIGRANT_UNICODE_HPP
#define MIGRANT_UNICODE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Minimal UTF-8 handling for word normalization: decoding, encoding, simple
// case folding over the Latin, Greek and Cyrillic blocks, and a coarse
// letter/mark classification. Scripts outside these blocks are treated as
// letters when they fall in ranges without digits or punctuation.

namespace migrant::unicode {

constexpr char32_t kInvalid = 0xFFFFFFFF;

/// Decodes one code point starting at `pos`, advancing it. Returns kInvalid on
/// malformed input (overlong, surrogate, truncated).
inline char32_t decode_next(std::string_view s, std::size_t& pos) {
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return kInvalid;
    }
    if (pos + len > s.size()) {
        pos = s.size();
        return kInvalid;
    }
    for (int i = 1; i < len; ++i) {
        unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            pos += i;
            return kInvalid;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    pos += len;
    static constexpr char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return kInvalid;
    return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

namespace detail {

// Blocks where upper/lower case alternate: upper at even (or odd) offsets.
constexpr bool in_alternating(char32_t cp, char32_t lo, char32_t hi, bool upper_even) {
    return cp >= lo && cp <= hi && ((cp % 2 == 0) == upper_even);
}

} // namespace detail

/// Simple (1:1) case folding.
constexpr char32_t fold(char32_t cp) {
    using detail::in_alternating;
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp < 0x80) return cp;
    if (cp == 0x00B5) return 0x03BC;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
    if (cp == 0x0130) return cp; // no simple fold for dotted capital I
    if (in_alternating(cp, 0x0100, 0x012F, true)) return cp + 1;
    if (in_alternating(cp, 0x0132, 0x0137, true)) return cp + 1;
    if (in_alternating(cp, 0x0139, 0x0148, false)) return cp + 1;
    if (in_alternating(cp, 0x014A, 0x0177, true)) return cp + 1;
    if (cp == 0x0178) return 0x00FF;
    if (in_alternating(cp, 0x0179, 0x017E, false)) return cp + 1;
    if (cp == 0x017F) return 's';
    if (in_alternating(cp, 0x01CD, 0x01DC, false)) return cp + 1;
    if (in_alternating(cp, 0x01DE, 0x01EF, true)) return cp + 1;
    if (in_alternating(cp, 0x01F8, 0x021F, true)) return cp + 1;
    if (in_alternating(cp, 0x0222, 0x0233, true)) return cp + 1;
    if (cp == 0x0386) return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A) return cp + 37;
    if (cp == 0x038C) return 0x03CC;
    if (cp == 0x038E || cp == 0x038F) return cp + 63;
    if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 32;
    if (cp == 0x03C2) return 0x03C3;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
    if (in_alternating(cp, 0x0460, 0x0481, true)) return cp + 1;
    if (in_alternating(cp, 0x048A, 0x04BF, true)) return cp + 1;
    if (in_alternating(cp, 0x04D0, 0x04FF, true)) return cp + 1;
    if (cp == 0x1E9E) return 0x00DF;
    if (in_alternating(cp, 0x1E00, 0x1E95, true)) return cp + 1;
    if (in_alternating(cp, 0x1EA0, 0x1EFF, true)) return cp + 1;
    return cp;
}

constexpr bool is_combining_mark(char32_t cp) {
    return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
           (cp >= 0x1DC0 && cp <= 0x1DFF) || (cp >= 0x20D0 && cp <= 0x20FF);
}

constexpr bool is_letter(char32_t cp) {
    if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp == 0x00AA || cp == 0x00B5 || cp == 0x00BA) return true;
    if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
    if (cp >= 0x0250 && cp <= 0x02AF) return true;
    if (cp >= 0x0370 && cp <= 0x03FF) return cp != 0x037E && cp != 0x0387 && cp != 0x0375 && cp != 0x0384 && cp != 0x0385;
    if (cp >= 0x0400 && cp <= 0x052F) return cp < 0x0482 || cp > 0x0489;
    // Remaining scripts: letters unless in digit or punctuation blocks.
    if (cp >= 0x0660 && cp <= 0x0669) return false;
    if (cp >= 0x06F0 && cp <= 0x06F9) return false;
    if (cp >= 0x0966 && cp <= 0x096F) return false;
    if (cp >= 0x0530 && cp <= 0x1DBF) return true;
    if (cp >= 0x1E00 && cp <= 0x1FFF) return true;
    if (cp >= 0x2C00 && cp <= 0x2DFF) return true;
    if (cp >= 0x3040 && cp <= 0xD7FF) return true;
    if (cp >= 0xF900 && cp <= 0xFAFF) return true;
    if (cp >= 0x10000 && cp <= 0x1F0FF) return true;
    if (cp >= 0x20000 && cp <= 0x3FFFF) return true;
    return false;
}

} // namespace migrant::unicode

#endif // MIGRANT_UNICODE_HPP
