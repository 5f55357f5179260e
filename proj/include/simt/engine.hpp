#pragma once

#include <string>
#include <vector>

#include "simt/predictor.hpp"
#include "simt/record.hpp"
#include "simt/token.hpp"
#include "simt/trace.hpp"

namespace simt {

enum class TimeMode { SimulatedTime, WallClock };

struct EngineConfig {
  LatencyLevel latency = LatencyLevel::Medium;
  int max_tokens_per_write = 64;
  int max_total_target = 0;  // 0: auto, 4 * source length + 32
  double source_arrival_interval_s = 0.3;
  double per_token_compute_seconds = 0.01;
  TimeMode mode = TimeMode::SimulatedTime;

  int total_target_cap(std::size_t source_len) const {
    return max_total_target > 0
               ? max_total_target
               : static_cast<int>(4 * source_len + 32);
  }
};

/// Two-phase adaptive decoding. Read phase: append the next source token and
/// predict; anything but end-of-read is discarded. Write phase: predictions
/// are committed to the target until end-of-write hands control back to the
/// read phase. The predictor context must already hold the rendered prompt.
TranslationTrace run_adaptive(const std::string& record_id,
                              const std::vector<std::string>& source_words,
                              Predictor& predictor, const EngineConfig& config);

/// Fixed wait-k policy with prompt rebuilding: reads k source tokens, then
/// alternates one write per read. Before every write the context is rebuilt
/// as prompt + source-so-far + target-so-far, so each prediction pays for the
/// full rebuilt length.
TranslationTrace run_wait_k(const std::string& record_id,
                            const std::vector<std::string>& source_words,
                            int k, Predictor& predictor,
                            const EngineConfig& config,
                            const std::vector<Token>& prompt_tokens);

/// Whole-source-first decoding: the entire source is read as one chunk, then
/// a single write phase runs to completion. The predictor context must
/// already hold the rendered prompt.
TranslationTrace run_offline(const std::string& record_id,
                             const std::vector<std::string>& source_words,
                             Predictor& predictor, const EngineConfig& config);

}  // namespace simt
