#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simt/record.hpp"

namespace simt {

enum class MergeSide { Source, Target, Either };

MergeSide merge_side_from_string(std::string_view name);
std::string_view to_string(MergeSide side);

struct CurationConfig {
  int min_source_words = 20;
  double quality_threshold = 80.0;
  bool quality_filter = true;
  MergeSide merge_side = MergeSide::Source;
  int min_chunk_words = 2;
  int min_chunk_cjk_chars = 4;
};

/// Filter verdict: empty optional keeps the record, otherwise the drop reason.
using FilterResult = std::optional<std::string>;

FilterResult filter_source_length(const AlignedChunkRecord& record,
                                  int min_words = 20);
FilterResult filter_alignment(const AlignedChunkRecord& record);

/// Precondition: quality_score present; throws std::invalid_argument for
/// unscored records (an error, not a drop).
FilterResult filter_quality(const AlignedChunkRecord& record,
                            double threshold = 80.0);

/// Merges chunks below the length threshold into their successor (last chunk
/// into its predecessor), keeping source/target alignment in lockstep.
/// Idempotent; preserves the concatenation of words on both sides.
AlignedChunkRecord merge_short_chunks(const AlignedChunkRecord& record,
                                      int min_words = 2, int min_cjk_chars = 4,
                                      MergeSide side = MergeSide::Source);

struct DropEntry {
  std::string id;
  std::string stage;   // source_length | alignment | quality
  std::string reason;
};

struct PipelineResult {
  std::vector<AlignedChunkRecord> kept;
  std::vector<DropEntry> dropped;
  std::vector<std::string> errors;  // e.g. unscored records
};

/// Curation order: length filter, alignment filter, quality filter, merge.
PipelineResult run_pipeline(const std::vector<AlignedChunkRecord>& corpus,
                            const CurationConfig& config);

}  // namespace simt
