#include "simt/curation.hpp"

#include <stdexcept>

#include "simt/text.hpp"

namespace simt {

MergeSide merge_side_from_string(std::string_view name) {
  if (name == "source") return MergeSide::Source;
  if (name == "target") return MergeSide::Target;
  if (name == "either") return MergeSide::Either;
  throw std::invalid_argument("unknown merge side: " + std::string(name));
}

std::string_view to_string(MergeSide side) {
  switch (side) {
    case MergeSide::Source: return "source";
    case MergeSide::Target: return "target";
    case MergeSide::Either: return "either";
  }
  return "?";
}

FilterResult filter_source_length(const AlignedChunkRecord& record,
                                  int min_words) {
  std::size_t n = 0;
  for (const auto& c : record.source_chunks) n += chunk_unit_count(c);
  if (n < static_cast<std::size_t>(min_words))
    return "source length " + std::to_string(n) + " < " +
           std::to_string(min_words);
  return std::nullopt;
}

FilterResult filter_alignment(const AlignedChunkRecord& record) {
  if (record.source_chunks.empty() && record.target_chunks.empty())
    return "empty record";
  if (record.source_chunks.size() != record.target_chunks.size())
    return "unequal chunk counts " + std::to_string(record.source_chunks.size()) +
           " vs " + std::to_string(record.target_chunks.size());
  return std::nullopt;
}

FilterResult filter_quality(const AlignedChunkRecord& record, double threshold) {
  if (!record.quality_score)
    throw std::invalid_argument("unscored record " + record.id);
  if (*record.quality_score < threshold)
    return "quality score " + std::to_string(*record.quality_score) + " < " +
           std::to_string(threshold);
  return std::nullopt;
}

namespace {

bool chunk_is_short(const Chunk& chunk, int min_words, int min_cjk_chars) {
  if (is_cjk_chunk(chunk))
    return chunk_unit_count(chunk) < static_cast<std::size_t>(min_cjk_chars);
  return chunk.size() < static_cast<std::size_t>(min_words);
}

bool pair_is_short(const AlignedChunkRecord& r, std::size_t t, int min_words,
                   int min_cjk, MergeSide side) {
  switch (side) {
    case MergeSide::Source:
      return chunk_is_short(r.source_chunks[t], min_words, min_cjk);
    case MergeSide::Target:
      return chunk_is_short(r.target_chunks[t], min_words, min_cjk);
    case MergeSide::Either:
      return chunk_is_short(r.source_chunks[t], min_words, min_cjk) ||
             chunk_is_short(r.target_chunks[t], min_words, min_cjk);
  }
  return false;
}

void merge_into_next(std::vector<Chunk>& chunks, std::size_t t) {
  Chunk merged = std::move(chunks[t]);
  merged.insert(merged.end(), chunks[t + 1].begin(), chunks[t + 1].end());
  chunks[t + 1] = std::move(merged);
  chunks.erase(chunks.begin() + static_cast<std::ptrdiff_t>(t));
}

void merge_into_prev(std::vector<Chunk>& chunks, std::size_t t) {
  chunks[t - 1].insert(chunks[t - 1].end(), chunks[t].begin(), chunks[t].end());
  chunks.erase(chunks.begin() + static_cast<std::ptrdiff_t>(t));
}

}  // namespace

AlignedChunkRecord merge_short_chunks(const AlignedChunkRecord& record,
                                      int min_words, int min_cjk_chars,
                                      MergeSide side) {
  AlignedChunkRecord r = record;
  if (auto bad = filter_alignment(r))
    throw std::invalid_argument("merge_short_chunks: " + *bad);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; r.source_chunks.size() > 1 &&
                            t + 1 < r.source_chunks.size();) {
      if (pair_is_short(r, t, min_words, min_cjk_chars, side)) {
        merge_into_next(r.source_chunks, t);
        merge_into_next(r.target_chunks, t);
        changed = true;
      } else {
        ++t;
      }
    }
    const std::size_t last = r.source_chunks.size() - 1;
    if (r.source_chunks.size() > 1 &&
        pair_is_short(r, last, min_words, min_cjk_chars, side)) {
      merge_into_prev(r.source_chunks, last);
      merge_into_prev(r.target_chunks, last);
      changed = true;
    }
  }
  return r;
}

PipelineResult run_pipeline(const std::vector<AlignedChunkRecord>& corpus,
                            const CurationConfig& config) {
  PipelineResult result;
  for (const auto& record : corpus) {
    if (auto reason = filter_source_length(record, config.min_source_words)) {
      result.dropped.push_back({record.id, "source_length", *reason});
      continue;
    }
    if (auto reason = filter_alignment(record)) {
      result.dropped.push_back({record.id, "alignment", *reason});
      continue;
    }
    if (config.quality_filter) {
      if (!record.quality_score) {
        result.errors.push_back("unscored record " + record.id);
        continue;
      }
      if (auto reason = filter_quality(record, config.quality_threshold)) {
        result.dropped.push_back({record.id, "quality", *reason});
        continue;
      }
    }
    AlignedChunkRecord merged =
        merge_short_chunks(record, config.min_chunk_words,
                           config.min_chunk_cjk_chars, config.merge_side);
    if (auto violations = validate_record(merged); !violations.empty()) {
      result.dropped.push_back({record.id, "validation", violations.front()});
      continue;
    }
    result.kept.push_back(std::move(merged));
  }
  return result;
}

}  // namespace simt
