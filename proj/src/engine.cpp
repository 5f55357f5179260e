#include "simt/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace simt {

namespace {

/// Session clock: simulated time advances by arrival waits and per-evaluation
/// compute cost; wall-clock mode reads the steady clock.
class SessionClock {
 public:
  SessionClock(const EngineConfig& config, const Predictor& predictor)
      : config_(config),
        predictor_(predictor),
        start_(std::chrono::steady_clock::now()) {}

  /// Charge compute time for predictor evaluations since the last call.
  void charge() {
    const std::int64_t fe = predictor_.forward_evals();
    if (config_.mode == TimeMode::SimulatedTime)
      now_ += static_cast<double>(fe - charged_) *
              config_.per_token_compute_seconds;
    charged_ = fe;
  }

  /// Source token j (1-based) becomes available at j * arrival interval.
  void wait_for_arrival(int j) {
    if (config_.mode == TimeMode::SimulatedTime)
      now_ = std::max(now_, j * config_.source_arrival_interval_s);
  }

  double now() {
    if (config_.mode == TimeMode::WallClock) {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start_)
          .count();
    }
    return now_;
  }

 private:
  const EngineConfig& config_;
  const Predictor& predictor_;
  std::chrono::steady_clock::time_point start_;
  double now_ = 0.0;
  std::int64_t charged_ = 0;
};

struct WriteOutcome {
  bool session_done = false;
};

/// One write phase: commit predictions until a chunk terminator or a cap.
/// `flush` keeps writing through further chunks once the source is exhausted.
WriteOutcome write_phase(Predictor& predictor, SessionClock& clock,
                         const EngineConfig& config, int src_read,
                         bool source_exhausted, int total_cap,
                         TranslationTrace& trace) {
  WriteOutcome out;
  int written_this_chunk = 0;
  while (true) {
    Token t = predictor.predict_next();
    clock.charge();
    if (t.kind() == TokenKind::EndOfSequence) {
      predictor.accept_prediction(t);
      if (trace.chunk_boundaries.empty() ||
          trace.chunk_boundaries.back() !=
              static_cast<int>(trace.emitted.size()))
        trace.chunk_boundaries.push_back(static_cast<int>(trace.emitted.size()));
      out.session_done = true;
      return out;
    }
    const bool end_of_write = t.kind() == TokenKind::EndOfWrite;
    const bool stray_end_of_read = t.kind() == TokenKind::EndOfRead;
    if (end_of_write || stray_end_of_read) {
      // A stray end-of-read also terminates the chunk; the canonical
      // terminator is injected instead of the prediction.
      if (stray_end_of_read) {
        ++trace.anomalies;
        Token eow = Token::end_of_write();
        predictor.extend(std::span<const Token>(&eow, 1));
      } else {
        predictor.accept_prediction(t);
      }
      clock.charge();
      trace.chunk_boundaries.push_back(static_cast<int>(trace.emitted.size()));
      if (!source_exhausted) return out;  // back to the read phase
      written_this_chunk = 0;
      continue;  // flush remaining chunks
    }
    // Commit as a target token, whatever surface the backend produced.
    predictor.accept_prediction(t);
    trace.emitted.emplace_back(t.surface(), TokenKind::Target);
    trace.delays.push_back(src_read);
    trace.emit_times.push_back(clock.now());
    ++written_this_chunk;
    if (static_cast<int>(trace.emitted.size()) >= total_cap) {
      trace.truncated = true;
      trace.chunk_boundaries.push_back(static_cast<int>(trace.emitted.size()));
      out.session_done = true;
      return out;
    }
    if (written_this_chunk >= config.max_tokens_per_write) {
      trace.truncated = true;
      Token eow = Token::end_of_write();
      predictor.extend(std::span<const Token>(&eow, 1));
      clock.charge();
      trace.chunk_boundaries.push_back(static_cast<int>(trace.emitted.size()));
      if (!source_exhausted) return out;
      written_this_chunk = 0;
    }
  }
}

}  // namespace

TranslationTrace run_adaptive(const std::string& record_id,
                              const std::vector<std::string>& source_words,
                              Predictor& predictor, const EngineConfig& config) {
  if (source_words.empty())
    throw std::invalid_argument("run_adaptive: empty source");
  TranslationTrace trace;
  trace.record_id = record_id;
  trace.source_len = static_cast<int>(source_words.size());
  const int total_cap = config.total_target_cap(source_words.size());
  SessionClock clock(config, predictor);

  int src_read = 0;
  const int n = trace.source_len;
  bool done = false;
  while (!done) {
    // Read phase: append source tokens until end-of-read is predicted or the
    // source runs out.
    bool entered_write = false;
    while (!entered_write) {
      if (src_read < n) {
        Token src(source_words[static_cast<std::size_t>(src_read)],
                  TokenKind::Source);
        ++src_read;
        clock.wait_for_arrival(src_read);
        predictor.extend(std::span<const Token>(&src, 1));
        clock.charge();
        Token t = predictor.predict_next();
        clock.charge();
        if (t.kind() == TokenKind::EndOfRead) {
          predictor.accept_prediction(t);
          entered_write = true;
        } else {
          ++trace.discarded_predictions;
          if (t.is_signal()) ++trace.anomalies;
        }
      } else {
        // Source exhausted mid-read: force the transition and flush.
        Token eor = Token::end_of_read();
        predictor.extend(std::span<const Token>(&eor, 1));
        clock.charge();
        entered_write = true;
      }
    }
    const bool exhausted = src_read >= n;
    WriteOutcome out = write_phase(predictor, clock, config, src_read,
                                   exhausted, total_cap, trace);
    done = out.session_done || exhausted;
  }
  trace.forward_evals = predictor.forward_evals();
  trace.total_wall = clock.now();
  trace.check();
  return trace;
}

TranslationTrace run_offline(const std::string& record_id,
                             const std::vector<std::string>& source_words,
                             Predictor& predictor, const EngineConfig& config) {
  if (source_words.empty())
    throw std::invalid_argument("run_offline: empty source");
  TranslationTrace trace;
  trace.record_id = record_id;
  trace.source_len = static_cast<int>(source_words.size());
  const int total_cap = config.total_target_cap(source_words.size());
  SessionClock clock(config, predictor);

  std::vector<Token> all;
  all.reserve(source_words.size() + 1);
  for (const auto& w : source_words) all.emplace_back(w, TokenKind::Source);
  all.push_back(Token::end_of_read());
  clock.wait_for_arrival(trace.source_len);
  predictor.extend(all);
  clock.charge();
  write_phase(predictor, clock, config, trace.source_len, /*source_exhausted=*/true,
              total_cap, trace);
  trace.forward_evals = predictor.forward_evals();
  trace.total_wall = clock.now();
  trace.check();
  return trace;
}

TranslationTrace run_wait_k(const std::string& record_id,
                            const std::vector<std::string>& source_words,
                            int k, Predictor& predictor,
                            const EngineConfig& config,
                            const std::vector<Token>& prompt_tokens) {
  if (k < 1) throw std::invalid_argument("run_wait_k: k must be >= 1");
  if (source_words.empty())
    throw std::invalid_argument("run_wait_k: empty source");
  TranslationTrace trace;
  trace.record_id = record_id;
  trace.source_len = static_cast<int>(source_words.size());
  const int n = trace.source_len;
  const int total_cap = config.total_target_cap(source_words.size());
  SessionClock clock(config, predictor);

  int src_read = std::min(k, n);
  clock.wait_for_arrival(src_read);
  std::vector<Token> target_so_far;
  while (true) {
    // Prompt reorganization: the whole context is rebuilt before every write,
    // so the following prediction is charged the full context length.
    std::vector<Token> ctx = prompt_tokens;
    for (int j = 0; j < src_read; ++j)
      ctx.emplace_back(source_words[static_cast<std::size_t>(j)],
                       TokenKind::Source);
    ctx.insert(ctx.end(), target_so_far.begin(), target_so_far.end());
    predictor.rebuild(std::move(ctx));
    Token t = predictor.predict_next();
    clock.charge();
    if (t.is_signal() || t.kind() == TokenKind::EndOfSequence) break;
    target_so_far.emplace_back(t.surface(), TokenKind::Target);
    trace.emitted.emplace_back(t.surface(), TokenKind::Target);
    trace.delays.push_back(src_read);
    trace.emit_times.push_back(clock.now());
    if (static_cast<int>(trace.emitted.size()) >= total_cap) {
      trace.truncated = true;
      break;
    }
    if (src_read < n) {
      ++src_read;
      clock.wait_for_arrival(src_read);
    }
  }
  trace.forward_evals = predictor.forward_evals();
  trace.total_wall = clock.now();
  trace.check();
  return trace;
}

}  // namespace simt
