#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simt/token.hpp"

namespace simt {

/// Full record of one inference session. `delays[i]` is the number of source
/// tokens read when target token i was committed.
struct TranslationTrace {
  std::string record_id;
  std::vector<Token> emitted;          // Target kind only
  std::vector<int> delays;             // g(i), 1-based counts
  std::vector<double> emit_times;      // seconds since session start
  double total_wall = 0.0;             // seconds
  std::int64_t forward_evals = 0;
  std::int64_t discarded_predictions = 0;
  int source_len = 0;
  std::vector<int> chunk_boundaries;   // emitted-size at each end-of-write
  bool truncated = false;
  std::int64_t anomalies = 0;          // out-of-phase signal predictions

  /// Throws std::invalid_argument when the delay/time invariants are broken.
  void check() const;
};

struct WordAlignment {
  std::vector<std::pair<int, int>> pairs;  // zero-based (src, tgt)
};

struct MetricReport {
  double al = 0.0;
  double laal = 0.0;
  double al_ca = 0.0;
  double wwt_ms = 0.0;
  double bleu = 0.0;
  std::optional<double> hallucination_rate;
  std::optional<double> policy_a;
  int n_sentences = 0;
};

}  // namespace simt
