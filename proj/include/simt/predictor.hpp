#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "simt/protocol.hpp"
#include "simt/token.hpp"

namespace simt {

/// Append-only context over a next-token backend with forward-evaluation
/// accounting. Cost model:
///   - extend(): injects external tokens, one evaluation per token,
///   - accept_prediction(): appends the token the backend just predicted,
///     already evaluated, zero cost,
///   - predict_next(): one evaluation when the context is cached, the full
///     context length on the first predict after a rebuild(),
///   - rebuild(): replaces the context wholesale and invalidates the cache.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual void extend(std::span<const Token> tokens) = 0;
  virtual void accept_prediction(const Token& token) = 0;
  virtual void rebuild(std::vector<Token> context) = 0;
  virtual Token predict_next() = 0;

  virtual const std::vector<Token>& context() const = 0;
  virtual std::int64_t forward_evals() const = 0;
};

/// Accounting shared by in-process backends; subclasses supply choose_next().
class LocalPredictor : public Predictor {
 public:
  void extend(std::span<const Token> tokens) override;
  void accept_prediction(const Token& token) override;
  void rebuild(std::vector<Token> context) override;
  Token predict_next() override;

  const std::vector<Token>& context() const override { return context_; }
  std::int64_t forward_evals() const override { return forward_evals_; }

 protected:
  virtual Token choose_next() = 0;

  std::vector<Token> context_;

 private:
  std::int64_t forward_evals_ = 0;
  bool cache_dirty_ = false;
};

/// Deterministic greedy mock: replays a fixed token sequence. predict_next
/// returns script[len(context)] when the context is the script prefix of its
/// length; any divergence yields the sentinel token.
class ScriptedPredictor : public LocalPredictor {
 public:
  explicit ScriptedPredictor(SftSequence script) : script_(std::move(script)) {}

 protected:
  Token choose_next() override;

 private:
  SftSequence script_;
};

/// Echoes a fixed target word sequence regardless of source context: the
/// n-th predict (counted by Target tokens already in context) yields the n-th
/// target word, then end-of-sequence. Used by policies that manage the
/// read/write schedule themselves.
class ReferencePredictor : public LocalPredictor {
 public:
  explicit ReferencePredictor(std::vector<std::string> target_words)
      : target_words_(std::move(target_words)) {}

 protected:
  Token choose_next() override;

 private:
  std::vector<std::string> target_words_;
};

std::unique_ptr<Predictor> mock_predictor_from_script(SftSequence script);

}  // namespace simt
