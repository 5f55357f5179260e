#include "simt/token.hpp"

namespace simt {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Source: return "source";
    case TokenKind::Target: return "target";
    case TokenKind::EndOfRead: return "end_of_read";
    case TokenKind::EndOfWrite: return "end_of_write";
    case TokenKind::Prompt: return "prompt";
    case TokenKind::EndOfSequence: return "end_of_sequence";
  }
  return "?";
}

TokenKind token_kind_from_string(std::string_view name) {
  if (name == "source") return TokenKind::Source;
  if (name == "target") return TokenKind::Target;
  if (name == "end_of_read") return TokenKind::EndOfRead;
  if (name == "end_of_write") return TokenKind::EndOfWrite;
  if (name == "prompt") return TokenKind::Prompt;
  if (name == "end_of_sequence") return TokenKind::EndOfSequence;
  throw std::invalid_argument("unknown token kind: " + std::string(name));
}

Token::Token(std::string surface, TokenKind kind)
    : surface_(std::move(surface)), kind_(kind) {
  switch (kind_) {
    case TokenKind::Source:
    case TokenKind::Target:
    case TokenKind::Prompt:
      if (surface_.empty())
        throw std::invalid_argument("empty surface for content token");
      break;
    case TokenKind::EndOfRead:
      if (surface_ != kEndOfReadSurface)
        throw std::invalid_argument("end-of-read token must have surface " +
                                    std::string(kEndOfReadSurface));
      break;
    case TokenKind::EndOfWrite:
      if (surface_ != kEndOfWriteSurface)
        throw std::invalid_argument("end-of-write token must have surface " +
                                    std::string(kEndOfWriteSurface));
      break;
    case TokenKind::EndOfSequence:
      if (surface_ != kEndOfSequenceSurface)
        throw std::invalid_argument("end-of-sequence token must have surface " +
                                    std::string(kEndOfSequenceSurface));
      break;
  }
}

Token Token::end_of_read() {
  return Token(std::string(kEndOfReadSurface), TokenKind::EndOfRead);
}
Token Token::end_of_write() {
  return Token(std::string(kEndOfWriteSurface), TokenKind::EndOfWrite);
}
Token Token::end_of_sequence() {
  return Token(std::string(kEndOfSequenceSurface), TokenKind::EndOfSequence);
}
Token Token::unknown() {
  return Token(std::string(kUnknownSurface), TokenKind::Source);
}

std::string_view indicator_text(LatencyLevel level) {
  switch (level) {
    case LatencyLevel::Low: return "low";
    case LatencyLevel::LowMedium: return "low-medium";
    case LatencyLevel::Medium: return "medium";
    case LatencyLevel::MediumHigh: return "medium-high";
    case LatencyLevel::High: return "high";
    case LatencyLevel::Offline: return "offline";
  }
  return "?";
}

LatencyLevel latency_from_indicator(std::string_view text) {
  if (text == "low") return LatencyLevel::Low;
  if (text == "low-medium") return LatencyLevel::LowMedium;
  if (text == "medium") return LatencyLevel::Medium;
  if (text == "medium-high") return LatencyLevel::MediumHigh;
  if (text == "high") return LatencyLevel::High;
  if (text == "offline") return LatencyLevel::Offline;
  throw std::invalid_argument("unknown latency indicator: " + std::string(text));
}

}  // namespace simt
