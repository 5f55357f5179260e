#pragma once

#include <random>
#include <string>
#include <vector>

#include "simt/predictor.hpp"
#include "simt/record.hpp"
#include "simt/token.hpp"

namespace simt::testing {

/// Deterministic valid record generator for property tests.
inline AlignedChunkRecord random_record(std::mt19937& rng, int max_chunks = 10,
                                        int max_chunk_len = 8,
                                        int min_chunks = 1) {
  std::uniform_int_distribution<int> chunk_count(min_chunks, max_chunks);
  std::uniform_int_distribution<int> chunk_len(1, max_chunk_len);
  std::uniform_int_distribution<int> word_id(0, 999);
  AlignedChunkRecord r;
  r.id = "r" + std::to_string(rng());
  r.src_lang = "de";
  r.tgt_lang = "en";
  r.latency = LatencyLevel::Medium;
  const int t = chunk_count(rng);
  for (int i = 0; i < t; ++i) {
    Chunk src, tgt;
    const int ns = chunk_len(rng);
    const int nt = chunk_len(rng);
    for (int j = 0; j < ns; ++j)
      src.push_back("s" + std::to_string(word_id(rng)));
    for (int j = 0; j < nt; ++j)
      tgt.push_back("t" + std::to_string(word_id(rng)));
    r.source_chunks.push_back(std::move(src));
    r.target_chunks.push_back(std::move(tgt));
  }
  if (t == 1 && rng() % 4 == 0) r.latency = LatencyLevel::Offline;
  return r;
}

/// Wraps a predictor and snapshots the context after every mutation, plus the
/// outcome of every predict; used to verify the append-only contract and
/// discard safety from outside the engine.
class ProbePredictor : public Predictor {
 public:
  struct Event {
    enum class Kind { Extend, Accept, Rebuild, Predict } kind;
    std::vector<Token> tokens;  // appended tokens, or the predicted token
  };

  explicit ProbePredictor(Predictor& inner) : inner_(inner) {
    snapshots_.push_back(inner_.context());
  }

  void extend(std::span<const Token> tokens) override {
    inner_.extend(tokens);
    events_.push_back({Event::Kind::Extend,
                       std::vector<Token>(tokens.begin(), tokens.end())});
    snapshots_.push_back(inner_.context());
  }
  void accept_prediction(const Token& token) override {
    inner_.accept_prediction(token);
    events_.push_back({Event::Kind::Accept, {token}});
    snapshots_.push_back(inner_.context());
  }
  void rebuild(std::vector<Token> context) override {
    inner_.rebuild(std::move(context));
    events_.push_back({Event::Kind::Rebuild, {}});
    snapshots_.push_back(inner_.context());
  }
  Token predict_next() override {
    Token t = inner_.predict_next();
    events_.push_back({Event::Kind::Predict, {t}});
    return t;
  }

  const std::vector<Token>& context() const override { return inner_.context(); }
  std::int64_t forward_evals() const override { return inner_.forward_evals(); }

  const std::vector<std::vector<Token>>& snapshots() const { return snapshots_; }
  const std::vector<Event>& events() const { return events_; }

  /// Consecutive snapshots form a chain under the prefix order.
  bool append_only_held() const {
    for (std::size_t i = 1; i < snapshots_.size(); ++i) {
      const auto& prev = snapshots_[i - 1];
      const auto& cur = snapshots_[i];
      if (cur.size() < prev.size()) return false;
      for (std::size_t j = 0; j < prev.size(); ++j)
        if (!(prev[j] == cur[j])) return false;
    }
    return true;
  }

  /// A discarded prediction (a predict whose token was not the next appended
  /// token) must not be the token that actually entered the context next.
  int discard_violations() const {
    int violations = 0;
    for (std::size_t i = 0; i + 1 < events_.size(); ++i) {
      if (events_[i].kind != Event::Kind::Predict) continue;
      const Token& predicted = events_[i].tokens.front();
      const Event& next = events_[i + 1];
      if (next.kind == Event::Kind::Accept) continue;  // committed, not discarded
      if (next.kind == Event::Kind::Extend && !next.tokens.empty() &&
          next.tokens.front() == predicted &&
          predicted.kind() != TokenKind::Source)
        ++violations;  // a discarded non-source prediction re-entered verbatim
    }
    return violations;
  }

  /// Number of predicts whose token was not appended right after.
  int discarded_count() const {
    int n = 0;
    for (std::size_t i = 0; i < events_.size(); ++i) {
      if (events_[i].kind != Event::Kind::Predict) continue;
      const bool committed = i + 1 < events_.size() &&
                             events_[i + 1].kind == Event::Kind::Accept &&
                             events_[i + 1].tokens.front() == events_[i].tokens.front();
      if (!committed) ++n;
    }
    return n;
  }

 private:
  Predictor& inner_;
  std::vector<std::vector<Token>> snapshots_;
  std::vector<Event> events_;
};

}  // namespace simt::testing
