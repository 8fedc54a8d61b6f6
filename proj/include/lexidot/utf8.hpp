#pragma once

#include <string>
#include <string_view>

namespace lexidot::utf8 {

/// Decodes UTF-8 into code points. Throws ParseError on invalid sequences.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view cps);
void append(std::string& out, char32_t cp);

/// Number of code points in a valid UTF-8 string.
std::size_t length(std::string_view bytes);

bool is_valid(std::string_view bytes) noexcept;

/// ASCII punctuation, general punctuation, CJK symbols and punctuation, and
/// the punctuation subset of the full-width forms block.
bool is_punctuation(char32_t cp) noexcept;

bool is_space(char32_t cp) noexcept;

}  // namespace lexidot::utf8
