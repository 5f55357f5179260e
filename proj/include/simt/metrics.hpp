#pragma once

#include <string>
#include <vector>

#include "simt/trace.hpp"

namespace simt {

/// Average lagging: mean excess of g(i) over the ideal diagonal (i-1)/r,
/// r = Y/X, summed up to the first index where the full source was read.
double average_lagging(const std::vector<int>& delays, int source_len,
                       int target_len);

/// AL with the rate computed from max(hypothesis, reference) length, so a
/// short hypothesis is not rewarded.
double length_adaptive_al(const std::vector<int>& delays, int source_len,
                          int target_len_hyp, int target_len_ref);

/// Computation-aware AL: the policy delay is raised to the source position
/// effectively reached by the emission time, capped at the source length.
double computation_aware_al(const TranslationTrace& trace,
                            double source_arrival_interval_s);

/// Pooled corpus ratio: total wall seconds over total target words, in ms.
double word_wall_time_ms(const std::vector<TranslationTrace>& traces);

/// Fraction of target word positions with no alignment edge.
double hallucination_rate(std::size_t target_word_count,
                          const WordAlignment& alignment);

/// Fraction of target tokens whose gold-aligned source position had been read
/// when the token was emitted: (1/T) sum of [a_i <= g_i].
double policy_alignment_proportion(const std::vector<int>& gold_positions,
                                   const std::vector<int>& delays);

/// Corpus BLEU-4: clipped n-gram precisions over corpus counts, geometric
/// mean, exponential brevity penalty, 0-100 scale. add_one_smoothing adds one
/// to numerator and denominator for orders above unigram.
double corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                   const std::vector<std::vector<std::string>>& references,
                   bool add_one_smoothing = false);

enum class AlAggregation { MeanPerSentence, PooledByCutoff };

struct CorpusLatency {
  double al = 0.0;
  double laal = 0.0;
  double al_ca = 0.0;
};

/// Per-sentence metrics aggregated over a corpus of traces.
CorpusLatency corpus_latency(
    const std::vector<TranslationTrace>& traces,
    const std::vector<int>& reference_lengths,
    double source_arrival_interval_s,
    AlAggregation aggregation = AlAggregation::MeanPerSentence);

}  // namespace simt
