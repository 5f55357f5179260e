#pragma once

#include <memory>
#include <string>

#include "simt/predictor.hpp"

namespace simt {

struct RemoteConfig {
  std::string base_url;      // e.g. http://localhost:8089
  double timeout_s = 30.0;
  int retries = 2;
};

/// Client for a completion-style next-token server. Wire protocol:
/// POST /v1/next_token with {"session_id", "append": [surface,...],
/// "predict": bool}; response {"token": surface, "evaluated_positions": n}.
/// evaluated_positions accumulates into forward_evals, so the server's
/// caching behavior is directly measurable.
class RemotePredictor : public Predictor {
 public:
  explicit RemotePredictor(RemoteConfig config);
  ~RemotePredictor() override;

  void extend(std::span<const Token> tokens) override;
  void accept_prediction(const Token& token) override;
  void rebuild(std::vector<Token> context) override;
  Token predict_next() override;

  const std::vector<Token>& context() const override { return context_; }
  std::int64_t forward_evals() const override { return forward_evals_; }

 private:
  struct Impl;

  void post(const std::vector<Token>& append, bool predict, Token* out);

  RemoteConfig config_;
  std::unique_ptr<Impl> impl_;
  std::vector<Token> context_;
  std::int64_t forward_evals_ = 0;
  std::string session_id_;
  int session_counter_ = 0;
};

/// Classifies a predicted surface: the signal surfaces map to their kinds,
/// everything else is a Target token.
Token token_from_predicted_surface(const std::string& surface);

}  // namespace simt
