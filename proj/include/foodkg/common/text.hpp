// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace foodkg::text {

std::string trim(std::string_view s);

/// Replaces every run of Unicode whitespace with a single ASCII space and trims.
std::string collapse_whitespace(std::string_view s);

/// Full Unicode lowercase of a UTF-8 string.
std::string to_lower(std::string_view s);

/// Unicode NFC normalization of a UTF-8 string.
std::string nfc(std::string_view s);

/// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD.
std::u32string to_code_points(std::string_view s);

/// English singular form of one word ("tomatoes" -> "tomato", "berries" -> "berry").
/// Words on the invariant list ("couscous", "asparagus", ...) pass through.
std::string singularize_word(std::string_view word);

/// Identity key for entity names: NFC, lowercase, whitespace collapsed,
/// final word singularized. "  Red  Apples " -> "red apple".
std::string normalize_name(std::string_view s);

/// Lowercase alphanumeric runs. Underscores and punctuation separate tokens.
std::vector<std::string> tokenize_words(std::string_view s);

std::vector<std::string> split(std::string_view s, char delimiter);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Shortest decimal text that round-trips to the same double. Integral
/// values print without a fraction ("3", not "3.0").
std::string format_number(double value);

bool contains_letter(std::string_view s);

} // namespace foodkg::text
