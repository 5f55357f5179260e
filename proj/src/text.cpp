#include "simt/text.hpp"

#include <cctype>

namespace simt {

std::vector<char32_t> utf8_codepoints(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    }
    if (len > 1) {
      if (i + len > text.size()) {
        out.push_back(0xFFFD);
        break;
      }
      bool ok = true;
      for (std::size_t j = 1; j < len; ++j) {
        unsigned char c = static_cast<unsigned char>(text[i + j]);
        if ((c & 0xC0) != 0x80) {
          ok = false;
          break;
        }
        cp = (cp << 6) | (c & 0x3F);
      }
      if (!ok) {
        cp = 0xFFFD;
        len = 1;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool is_cjk_codepoint(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||   // CJK Unified Ideographs
         (cp >= 0x3400 && cp <= 0x4DBF) ||   // Extension A
         (cp >= 0xF900 && cp <= 0xFAFF);     // Compatibility Ideographs
}

bool is_cjk_chunk(const std::vector<std::string>& words) {
  std::size_t total = 0;
  std::size_t cjk = 0;
  for (const auto& w : words) {
    for (char32_t cp : utf8_codepoints(w)) {
      ++total;
      if (is_cjk_codepoint(cp)) ++cjk;
    }
  }
  return total > 0 && 2 * cjk >= total;
}

std::size_t chunk_unit_count(const std::vector<std::string>& words) {
  if (!is_cjk_chunk(words)) return words.size();
  std::size_t chars = 0;
  for (const auto& w : words) chars += utf8_codepoints(w).size();
  return chars;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

static std::string encode_utf8(char32_t cp) {
  std::string s;
  if (cp < 0x80) {
    s += static_cast<char>(cp);
  } else if (cp < 0x800) {
    s += static_cast<char>(0xC0 | (cp >> 6));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    s += static_cast<char>(0xE0 | (cp >> 12));
    s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    s += static_cast<char>(0xF0 | (cp >> 18));
    s += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return s;
}

std::vector<std::string> word_units(std::string_view text) {
  auto words = split_whitespace(text);
  if (!is_cjk_chunk(words)) return words;
  std::vector<std::string> chars;
  for (const auto& w : words)
    for (char32_t cp : utf8_codepoints(w)) chars.push_back(encode_utf8(cp));
  return chars;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

}  // namespace simt
