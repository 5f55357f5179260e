#include "simt/predictor.hpp"

#include <stdexcept>

namespace simt {

void LocalPredictor::extend(std::span<const Token> tokens) {
  context_.insert(context_.end(), tokens.begin(), tokens.end());
  forward_evals_ += static_cast<std::int64_t>(tokens.size());
}

void LocalPredictor::accept_prediction(const Token& token) {
  context_.push_back(token);
}

void LocalPredictor::rebuild(std::vector<Token> context) {
  context_ = std::move(context);
  cache_dirty_ = true;  // full re-evaluation charged on the next predict
}

Token LocalPredictor::predict_next() {
  if (context_.empty())
    throw std::logic_error("predict_next on empty context");
  if (cache_dirty_) {
    forward_evals_ += static_cast<std::int64_t>(context_.size());
    cache_dirty_ = false;
  } else {
    forward_evals_ += 1;
  }
  return choose_next();
}

Token ScriptedPredictor::choose_next() {
  const std::size_t n = context_.size();
  if (n >= script_.tokens.size()) return Token::unknown();
  for (std::size_t i = 0; i < n; ++i)
    if (!(context_[i] == script_.tokens[i])) return Token::unknown();
  return script_.tokens[n];
}

Token ReferencePredictor::choose_next() {
  std::size_t emitted = 0;
  for (const auto& t : context_)
    if (t.kind() == TokenKind::Target) ++emitted;
  if (emitted >= target_words_.size()) return Token::end_of_sequence();
  return Token(target_words_[emitted], TokenKind::Target);
}

std::unique_ptr<Predictor> mock_predictor_from_script(SftSequence script) {
  return std::make_unique<ScriptedPredictor>(std::move(script));
}

}  // namespace simt
