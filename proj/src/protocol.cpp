#include "simt/protocol.hpp"

#include <stdexcept>

#include "simt/text.hpp"

namespace simt {

namespace {

std::size_t count_placeholder(const std::string& text, const std::string& ph) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(ph); pos != std::string::npos;
       pos = text.find(ph, pos + ph.size()))
    ++n;
  return n;
}

void replace_once(std::string& text, const std::string& ph,
                  const std::string& value) {
  text.replace(text.find(ph), ph.size(), value);
}

}  // namespace

PromptTemplate::PromptTemplate(std::string template_text)
    : text_(std::move(template_text)) {
  for (const char* ph : {"{src_lang}", "{tgt_lang}", "{latency_indicator}"}) {
    if (count_placeholder(text_, ph) != 1)
      throw std::invalid_argument(
          std::string("prompt template must contain exactly one ") + ph);
  }
}

PromptTemplate PromptTemplate::default_template() {
  return PromptTemplate(
      "Translate the streaming input from {src_lang} to {tgt_lang} with "
      "{latency_indicator} latency:");
}

std::vector<Token> PromptTemplate::render(const std::string& src_lang,
                                          const std::string& tgt_lang,
                                          LatencyLevel latency) const {
  std::string text = text_;
  replace_once(text, "{src_lang}", src_lang);
  replace_once(text, "{tgt_lang}", tgt_lang);
  replace_once(text, "{latency_indicator}", std::string(indicator_text(latency)));
  std::vector<Token> out;
  for (auto& w : split_whitespace(text))
    out.emplace_back(std::move(w), TokenKind::Prompt);
  return out;
}

SftSequence interleave(const AlignedChunkRecord& record,
                       const PromptTemplate& prompt) {
  auto violations = validate_record(record);
  if (!violations.empty())
    throw std::invalid_argument("invalid record " + record.id + ": " +
                                violations.front());
  SftSequence seq;
  seq.record_id = record.id;
  for (auto& t : prompt.render(record.src_lang, record.tgt_lang, record.latency))
    seq.tokens.push_back(std::move(t));
  for (std::size_t t = 0; t < record.source_chunks.size(); ++t) {
    for (const auto& w : record.source_chunks[t])
      seq.tokens.emplace_back(w, TokenKind::Source);
    seq.tokens.push_back(Token::end_of_read());
    for (const auto& w : record.target_chunks[t])
      seq.tokens.emplace_back(w, TokenKind::Target);
    seq.tokens.push_back(Token::end_of_write());
  }
  seq.tokens.push_back(Token::end_of_sequence());
  seq.loss_mask.reserve(seq.tokens.size());
  for (const auto& tok : seq.tokens)
    seq.loss_mask.push_back(tok.kind() != TokenKind::Prompt);
  return seq;
}

ParsedChunks parse_interleaved(std::span<const Token> tokens) {
  ParsedChunks out;
  enum class Phase { Read, Write } phase = Phase::Read;
  Chunk src;
  Chunk tgt;
  bool open = false;  // inside an unterminated chunk pair
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    switch (tok.kind()) {
      case TokenKind::Prompt:
        if (open || !out.source_chunks.empty())
          throw ParseError("prompt token inside chunk body at index " +
                               std::to_string(i),
                           i);
        break;
      case TokenKind::Source:
        if (phase != Phase::Read)
          throw ParseError("source token during target chunk at index " +
                               std::to_string(i),
                           i);
        src.push_back(tok.surface());
        open = true;
        break;
      case TokenKind::EndOfRead:
        if (phase != Phase::Read)
          throw ParseError("end-of-read without intervening end-of-write at index " +
                               std::to_string(i),
                           i);
        if (src.empty())
          throw ParseError("end-of-read with empty source chunk at index " +
                               std::to_string(i),
                           i);
        phase = Phase::Write;
        open = true;
        break;
      case TokenKind::Target:
        if (phase != Phase::Write)
          throw ParseError("target token before end-of-read at index " +
                               std::to_string(i),
                           i);
        tgt.push_back(tok.surface());
        break;
      case TokenKind::EndOfWrite:
        if (phase != Phase::Write)
          throw ParseError("end-of-write before end-of-read at index " +
                               std::to_string(i),
                           i);
        out.source_chunks.push_back(std::move(src));
        out.target_chunks.push_back(std::move(tgt));
        src.clear();
        tgt.clear();
        phase = Phase::Read;
        open = false;
        break;
      case TokenKind::EndOfSequence:
        if (open)
          throw ParseError("end-of-sequence inside open chunk at index " +
                               std::to_string(i),
                           i);
        if (i + 1 != tokens.size())
          throw ParseError("tokens after end-of-sequence at index " +
                               std::to_string(i),
                           i);
        break;
    }
  }
  if (open) {
    throw ParseError(phase == Phase::Write ? "unterminated target chunk"
                                           : "unterminated source chunk",
                     tokens.size());
  }
  return out;
}

}  // namespace simt
