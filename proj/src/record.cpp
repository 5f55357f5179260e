#include "simt/record.hpp"

#include <string>

namespace simt {

std::size_t AlignedChunkRecord::source_word_count() const {
  std::size_t n = 0;
  for (const auto& c : source_chunks) n += c.size();
  return n;
}

std::size_t AlignedChunkRecord::target_word_count() const {
  std::size_t n = 0;
  for (const auto& c : target_chunks) n += c.size();
  return n;
}

std::vector<std::string> AlignedChunkRecord::flat_source() const {
  std::vector<std::string> out;
  for (const auto& c : source_chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<std::string> AlignedChunkRecord::flat_target() const {
  std::vector<std::string> out;
  for (const auto& c : target_chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<std::string> validate_record(const AlignedChunkRecord& record) {
  std::vector<std::string> violations;
  const std::size_t ts = record.source_chunks.size();
  const std::size_t tt = record.target_chunks.size();
  if (ts != tt)
    violations.push_back("unequal chunk counts " + std::to_string(ts) + " vs " +
                         std::to_string(tt));
  if (ts == 0 && tt == 0) violations.push_back("empty record");
  for (std::size_t t = 0; t < ts; ++t)
    if (record.source_chunks[t].empty())
      violations.push_back("empty source chunk at index " + std::to_string(t));
  for (std::size_t t = 0; t < tt; ++t)
    if (record.target_chunks[t].empty())
      violations.push_back("empty target chunk at index " + std::to_string(t));
  for (std::size_t t = 0; t < ts; ++t)
    for (const auto& w : record.source_chunks[t])
      if (w.empty())
        violations.push_back("empty word in source chunk " + std::to_string(t));
  for (std::size_t t = 0; t < tt; ++t)
    for (const auto& w : record.target_chunks[t])
      if (w.empty())
        violations.push_back("empty word in target chunk " + std::to_string(t));
  if (record.latency == LatencyLevel::Offline && ts != 1)
    violations.push_back("offline record must have exactly one chunk, has " +
                         std::to_string(ts));
  if (record.quality_score && (*record.quality_score < 0.0 || *record.quality_score > 100.0))
    violations.push_back("quality score out of range");
  return violations;
}

}  // namespace simt
