#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simt {

enum class TokenKind {
  Source,
  Target,
  EndOfRead,
  EndOfWrite,
  Prompt,
  EndOfSequence,
};

inline constexpr std::string_view kEndOfReadSurface = "<|end-of-read|>";
inline constexpr std::string_view kEndOfWriteSurface = "<|end-of-write|>";
inline constexpr std::string_view kEndOfSequenceSurface = "<|end-of-sequence|>";
inline constexpr std::string_view kUnknownSurface = "<|unk|>";

std::string_view to_string(TokenKind kind);
TokenKind token_kind_from_string(std::string_view name);

/// One word-unit token with its protocol role. Construction enforces the
/// surface rules for signal tokens.
class Token {
 public:
  Token() : kind_(TokenKind::Source) {}
  Token(std::string surface, TokenKind kind);

  const std::string& surface() const { return surface_; }
  TokenKind kind() const { return kind_; }

  bool is_signal() const {
    return kind_ == TokenKind::EndOfRead || kind_ == TokenKind::EndOfWrite ||
           kind_ == TokenKind::EndOfSequence;
  }

  static Token end_of_read();
  static Token end_of_write();
  static Token end_of_sequence();
  static Token unknown();

  friend bool operator==(const Token&, const Token&) = default;

 private:
  std::string surface_;
  TokenKind kind_;
};

enum class LatencyLevel {
  Low,
  LowMedium,
  Medium,
  MediumHigh,
  High,
  Offline,
};

std::string_view indicator_text(LatencyLevel level);
LatencyLevel latency_from_indicator(std::string_view text);

}  // namespace simt
