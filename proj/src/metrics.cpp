#include "simt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace simt {

namespace {

/// AL core over real-valued delays: cutoff tau is the first index reaching
/// the full source, Y if none does.
double al_core(const std::vector<double>& g, int source_len, double rate) {
  const std::size_t y = g.size();
  std::size_t tau = y;
  for (std::size_t i = 0; i < y; ++i) {
    if (g[i] >= static_cast<double>(source_len)) {
      tau = i + 1;
      break;
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < tau; ++i)
    sum += g[i] - static_cast<double>(i) / rate;
  return sum / static_cast<double>(tau);
}

std::vector<double> to_real(const std::vector<int>& g) {
  return std::vector<double>(g.begin(), g.end());
}

}  // namespace

double average_lagging(const std::vector<int>& delays, int source_len,
                       int target_len) {
  if (source_len <= 0 || target_len <= 0)
    throw std::invalid_argument("average_lagging: empty source or target");
  if (delays.size() != static_cast<std::size_t>(target_len))
    throw std::invalid_argument("average_lagging: |delays| != target length");
  const double rate = static_cast<double>(target_len) / source_len;
  return al_core(to_real(delays), source_len, rate);
}

double length_adaptive_al(const std::vector<int>& delays, int source_len,
                          int target_len_hyp, int target_len_ref) {
  if (source_len <= 0 || target_len_hyp <= 0)
    throw std::invalid_argument("length_adaptive_al: empty source or target");
  if (target_len_ref <= 0)
    throw std::invalid_argument("length_adaptive_al: empty reference");
  if (delays.size() != static_cast<std::size_t>(target_len_hyp))
    throw std::invalid_argument("length_adaptive_al: |delays| != hyp length");
  const double rate =
      static_cast<double>(std::max(target_len_hyp, target_len_ref)) / source_len;
  return al_core(to_real(delays), source_len, rate);
}

double computation_aware_al(const TranslationTrace& trace,
                            double source_arrival_interval_s) {
  if (trace.source_len <= 0 || trace.emitted.empty())
    throw std::invalid_argument("computation_aware_al: empty source or target");
  if (source_arrival_interval_s <= 0.0)
    throw std::invalid_argument("computation_aware_al: interval must be > 0");
  const std::size_t y = trace.emitted.size();
  std::vector<double> g_ca(y);
  for (std::size_t i = 0; i < y; ++i) {
    const double effective = trace.emit_times[i] / source_arrival_interval_s;
    g_ca[i] = std::min(static_cast<double>(trace.source_len),
                       std::max(static_cast<double>(trace.delays[i]), effective));
  }
  const double rate = static_cast<double>(y) / trace.source_len;
  return al_core(g_ca, trace.source_len, rate);
}

double word_wall_time_ms(const std::vector<TranslationTrace>& traces) {
  if (traces.empty())
    throw std::invalid_argument("word_wall_time_ms: no traces");
  double wall = 0.0;
  std::size_t words = 0;
  for (const auto& t : traces) {
    wall += t.total_wall;
    words += t.emitted.size();
  }
  if (words == 0)
    throw std::invalid_argument("word_wall_time_ms: zero target words");
  return 1000.0 * wall / static_cast<double>(words);
}

double hallucination_rate(std::size_t target_word_count,
                          const WordAlignment& alignment) {
  if (target_word_count == 0)
    throw std::invalid_argument("hallucination_rate: empty target");
  std::vector<bool> aligned(target_word_count, false);
  for (const auto& [src, tgt] : alignment.pairs) {
    if (src < 0 || tgt < 0 || static_cast<std::size_t>(tgt) >= target_word_count)
      throw std::invalid_argument("hallucination_rate: alignment index out of range");
    aligned[static_cast<std::size_t>(tgt)] = true;
  }
  std::size_t unaligned = 0;
  for (bool a : aligned)
    if (!a) ++unaligned;
  return static_cast<double>(unaligned) / static_cast<double>(target_word_count);
}

double policy_alignment_proportion(const std::vector<int>& gold_positions,
                                   const std::vector<int>& delays) {
  if (gold_positions.size() != delays.size() || delays.empty())
    throw std::invalid_argument(
        "policy_alignment_proportion: length mismatch or empty input");
  std::size_t satisfied = 0;
  for (std::size_t i = 0; i < delays.size(); ++i)
    if (gold_positions[i] <= delays[i]) ++satisfied;
  return static_cast<double>(satisfied) / static_cast<double>(delays.size());
}

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> ngram_counts(const std::vector<std::string>& words,
                                          std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  if (words.size() < n) return counts;
  for (std::size_t i = 0; i + n <= words.size(); ++i)
    ++counts[Ngram(words.begin() + static_cast<std::ptrdiff_t>(i),
                   words.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

}  // namespace

double corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                   const std::vector<std::vector<std::string>>& references,
                   bool add_one_smoothing) {
  if (hypotheses.size() != references.size())
    throw std::invalid_argument("corpus_bleu: corpus size mismatch");
  if (hypotheses.empty())
    throw std::invalid_argument("corpus_bleu: empty corpus");
  constexpr std::size_t kMaxOrder = 4;
  std::size_t num[kMaxOrder] = {0, 0, 0, 0};
  std::size_t den[kMaxOrder] = {0, 0, 0, 0};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const auto& hyp = hypotheses[s];
    const auto& ref = references[s];
    if (ref.empty())
      throw std::invalid_argument("corpus_bleu: empty reference at sentence " +
                                  std::to_string(s));
    hyp_len += hyp.size();
    ref_len += ref.size();
    for (std::size_t n = 1; n <= kMaxOrder; ++n) {
      auto hyp_grams = ngram_counts(hyp, n);
      auto ref_grams = ngram_counts(ref, n);
      for (const auto& [gram, count] : hyp_grams) {
        den[n - 1] += count;
        auto it = ref_grams.find(gram);
        if (it != ref_grams.end()) num[n - 1] += std::min(count, it->second);
      }
    }
  }
  double log_precision_sum = 0.0;
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    double nu = static_cast<double>(num[n - 1]);
    double de = static_cast<double>(den[n - 1]);
    if (add_one_smoothing && n > 1) {
      nu += 1.0;
      de += 1.0;
    }
    if (nu <= 0.0 || de <= 0.0) return 0.0;
    log_precision_sum += std::log(nu / de) / static_cast<double>(kMaxOrder);
  }
  if (hyp_len == 0) return 0.0;
  const double bp =
      hyp_len >= ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  return 100.0 * bp * std::exp(log_precision_sum);
}

CorpusLatency corpus_latency(const std::vector<TranslationTrace>& traces,
                             const std::vector<int>& reference_lengths,
                             double source_arrival_interval_s,
                             AlAggregation aggregation) {
  if (traces.empty())
    throw std::invalid_argument("corpus_latency: no traces");
  if (traces.size() != reference_lengths.size())
    throw std::invalid_argument("corpus_latency: reference length count mismatch");
  CorpusLatency out;
  double weight_sum = 0.0;
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const auto& t = traces[s];
    const int y = static_cast<int>(t.emitted.size());
    const double al = average_lagging(t.delays, t.source_len, y);
    const double laal =
        length_adaptive_al(t.delays, t.source_len, y, reference_lengths[s]);
    const double al_ca = computation_aware_al(t, source_arrival_interval_s);
    const double w =
        aggregation == AlAggregation::MeanPerSentence ? 1.0 : static_cast<double>(y);
    out.al += w * al;
    out.laal += w * laal;
    out.al_ca += w * al_ca;
    weight_sum += w;
  }
  out.al /= weight_sum;
  out.laal /= weight_sum;
  out.al_ca /= weight_sum;
  return out;
}

}  // namespace simt
