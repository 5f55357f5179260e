#pragma once

#include <span>
#include <string>
#include <vector>

#include "simt/record.hpp"
#include "simt/token.hpp"

namespace simt {

/// Flattened interleaved token sequence with the per-token loss mask used by
/// the training format. loss_mask[i] is false exactly on Prompt tokens.
struct SftSequence {
  std::vector<Token> tokens;
  std::vector<bool> loss_mask;
  std::string record_id;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t index)
      : std::runtime_error(std::move(message)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Prompt text with {src_lang}, {tgt_lang} and {latency_indicator}
/// placeholders, each required exactly once.
class PromptTemplate {
 public:
  explicit PromptTemplate(std::string template_text);

  static PromptTemplate default_template();

  const std::string& text() const { return text_; }

  std::vector<Token> render(const std::string& src_lang,
                            const std::string& tgt_lang,
                            LatencyLevel latency) const;

 private:
  std::string text_;
};

/// Interleaves an aligned record into the training layout:
/// prompt, then per chunk: source words, end-of-read, target words,
/// end-of-write; terminated by end-of-sequence.
SftSequence interleave(const AlignedChunkRecord& record,
                       const PromptTemplate& prompt);

struct ParsedChunks {
  std::vector<Chunk> source_chunks;
  std::vector<Chunk> target_chunks;
};

/// Inverse of interleave on the non-prompt span. Prompt tokens and a trailing
/// end-of-sequence are skipped; malformed alternation throws ParseError with
/// the offending token index.
ParsedChunks parse_interleaved(std::span<const Token> tokens);

inline std::vector<Token> render_prompt(const PromptTemplate& tpl,
                                        const std::string& src_lang,
                                        const std::string& tgt_lang,
                                        LatencyLevel latency) {
  return tpl.render(src_lang, tgt_lang, latency);
}

}  // namespace simt
