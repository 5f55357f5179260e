#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simt/token.hpp"

namespace simt {

using Chunk = std::vector<std::string>;

/// One chunk-aligned training/evaluation example. Source and target chunk
/// sequences must have equal length for the record to be valid.
struct AlignedChunkRecord {
  std::string id;
  std::string src_lang;
  std::string tgt_lang;
  LatencyLevel latency = LatencyLevel::Low;
  std::vector<Chunk> source_chunks;
  std::vector<Chunk> target_chunks;
  std::optional<double> quality_score;  // 0-100, external scorer

  std::size_t source_word_count() const;
  std::size_t target_word_count() const;
  std::vector<std::string> flat_source() const;
  std::vector<std::string> flat_target() const;
};

/// Empty result means the record satisfies every invariant; otherwise one
/// message per violated invariant, naming chunk indices where relevant.
std::vector<std::string> validate_record(const AlignedChunkRecord& record);

}  // namespace simt
