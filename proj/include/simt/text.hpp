#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace simt {

/// Decodes a UTF-8 string into codepoints. Invalid bytes decode as U+FFFD.
std::vector<char32_t> utf8_codepoints(std::string_view text);

bool is_cjk_codepoint(char32_t cp);

/// A word list counts as CJK when at least half of its codepoints fall in
/// the CJK Unified Ideographs blocks.
bool is_cjk_chunk(const std::vector<std::string>& words);

/// Length of a chunk in threshold units: characters for CJK, words otherwise.
std::size_t chunk_unit_count(const std::vector<std::string>& words);

std::vector<std::string> split_whitespace(std::string_view text);

/// Splits a sentence into BLEU word units: characters when the text is
/// majority-CJK, whitespace words otherwise.
std::vector<std::string> word_units(std::string_view text);

std::string join_words(const std::vector<std::string>& words);

}  // namespace simt
