// SPDX-License-Identifier: Apache-2.0

#include "foodkg/common/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace foodkg::text {

namespace {

icu::UnicodeString from_utf8(std::string_view s)
{
    return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string to_utf8(const icu::UnicodeString& u)
{
    std::string out;
    u.toUTF8String(out);
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

const std::unordered_set<std::string_view>& invariant_words()
{
    static const std::unordered_set<std::string_view> words = {
        "asparagus", "bass", "citrus", "couscous", "cress", "grits", "hummus", "molasses",
        "octopus", "swiss", "watercress", "glass", "series", "species", "schnapps", "harissa",
        "lemongrass", "gras", "anis", "jus", "paris", "mais", "bratwurst", "chips"};
    return words;
}

const std::unordered_map<std::string_view, std::string_view>& irregular_words()
{
    static const std::unordered_map<std::string_view, std::string_view> words = {
        {"leaves", "leaf"},       {"halves", "half"},       {"loaves", "loaf"},
        {"knives", "knife"},      {"calves", "calf"},       {"shelves", "shelf"},
        {"cookies", "cookie"},    {"pies", "pie"},          {"brownies", "brownie"},
        {"smoothies", "smoothie"}, {"geese", "goose"},      {"teeth", "tooth"},
        {"mice", "mouse"},        {"feet", "foot"},         {"children", "child"}};
    return words;
}

} // namespace

std::string trim(std::string_view s)
{
    const auto is_space = [](unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s)
{
    const icu::UnicodeString in = from_utf8(s);
    icu::UnicodeString out;
    bool pending_space = false;
    for (int32_t i = 0; i < in.length();) {
        const UChar32 c = in.char32At(i);
        i += U16_LENGTH(c);
        if (u_isUWhiteSpace(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space && out.length() > 0)
            out.append(static_cast<UChar>(u' '));
        pending_space = false;
        out.append(c);
    }
    return to_utf8(out);
}

std::string to_lower(std::string_view s)
{
    icu::UnicodeString u = from_utf8(s);
    u.toLower(icu::Locale::getRoot());
    return to_utf8(u);
}

std::string nfc(std::string_view s)
{
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status))
        throw std::runtime_error("ICU NFC normalizer unavailable");
    icu::UnicodeString out = normalizer->normalize(from_utf8(s), status);
    if (U_FAILURE(status))
        throw std::runtime_error("ICU NFC normalization failed");
    return to_utf8(out);
}

std::u32string to_code_points(std::string_view s)
{
    const icu::UnicodeString u = from_utf8(s);
    std::u32string out;
    out.reserve(static_cast<std::size_t>(u.length()));
    for (int32_t i = 0; i < u.length();) {
        const UChar32 c = u.char32At(i);
        i += U16_LENGTH(c);
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

std::string singularize_word(std::string_view word)
{
    if (word.size() <= 3 || invariant_words().contains(word))
        return std::string(word);
    if (auto it = irregular_words().find(word); it != irregular_words().end())
        return std::string(it->second);
    if (ends_with(word, "ies") && word.size() > 4)
        return std::string(word.substr(0, word.size() - 3)) + "y";
    if (ends_with(word, "oes"))
        return std::string(word.substr(0, word.size() - 2));
    for (std::string_view suffix : {"ches", "shes", "sses", "xes", "zzes"}) {
        if (ends_with(word, suffix))
            return std::string(word.substr(0, word.size() - 2));
    }
    if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is"))
        return std::string(word);
    if (ends_with(word, "s"))
        return std::string(word.substr(0, word.size() - 1));
    return std::string(word);
}

std::string normalize_name(std::string_view s)
{
    std::string base = collapse_whitespace(to_lower(nfc(s)));
    const auto last_space = base.find_last_of(' ');
    const std::size_t start = last_space == std::string::npos ? 0 : last_space + 1;
    return base.substr(0, start) + singularize_word(std::string_view(base).substr(start));
}

std::vector<std::string> tokenize_words(std::string_view s)
{
    icu::UnicodeString u = from_utf8(s);
    u.toLower(icu::Locale::getRoot());
    std::vector<std::string> tokens;
    icu::UnicodeString current;
    const auto flush = [&] {
        if (current.length() > 0) {
            tokens.push_back(to_utf8(current));
            current.remove();
        }
    };
    for (int32_t i = 0; i < u.length();) {
        const UChar32 c = u.char32At(i);
        i += U16_LENGTH(c);
        if (u_isalnum(c))
            current.append(c);
        else
            flush();
    }
    flush();
    return tokens;
}

std::vector<std::string> split(std::string_view s, char delimiter)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delimiter, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            return parts;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::string format_number(double value)
{
    if (value == 0.0)
        return "0";
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), ptr);
}

bool contains_letter(std::string_view s)
{
    const icu::UnicodeString u = from_utf8(s);
    for (int32_t i = 0; i < u.length();) {
        const UChar32 c = u.char32At(i);
        i += U16_LENGTH(c);
        if (u_isalpha(c))
            return true;
    }
    return false;
}

} // namespace foodkg::text
