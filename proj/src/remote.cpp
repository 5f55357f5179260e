#include "simt/remote.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace simt {

using nlohmann::json;

Token token_from_predicted_surface(const std::string& surface) {
  if (surface == kEndOfReadSurface) return Token::end_of_read();
  if (surface == kEndOfWriteSurface) return Token::end_of_write();
  if (surface == kEndOfSequenceSurface) return Token::end_of_sequence();
  return Token(surface, TokenKind::Target);
}

struct RemotePredictor::Impl {
  httplib::Client client;
  explicit Impl(const RemoteConfig& config) : client(config.base_url) {
    const auto secs = std::chrono::duration<double>(config.timeout_s);
    client.set_connection_timeout(
        std::chrono::duration_cast<std::chrono::milliseconds>(secs));
    client.set_read_timeout(
        std::chrono::duration_cast<std::chrono::milliseconds>(secs));
  }
};

RemotePredictor::RemotePredictor(RemoteConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>(config_)) {
  session_id_ = "s0";
}

RemotePredictor::~RemotePredictor() = default;

void RemotePredictor::post(const std::vector<Token>& append, bool predict,
                           Token* out) {
  json req;
  req["session_id"] = session_id_;
  json surfaces = json::array();
  for (const auto& t : append) surfaces.push_back(t.surface());
  req["append"] = std::move(surfaces);
  req["predict"] = predict;
  const std::string body = req.dump();

  std::string error;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
    auto res = impl_->client.Post("/v1/next_token", body, "application/json");
    if (!res) {
      error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      error = "server returned status " + std::to_string(res->status);
      continue;
    }
    json resp = json::parse(res->body);
    forward_evals_ += resp.at("evaluated_positions").get<std::int64_t>();
    if (predict) {
      if (out) *out = token_from_predicted_surface(resp.at("token").get<std::string>());
    }
    return;
  }
  throw std::runtime_error("remote predictor: " + error);
}

void RemotePredictor::extend(std::span<const Token> tokens) {
  std::vector<Token> append(tokens.begin(), tokens.end());
  post(append, /*predict=*/false, nullptr);
  context_.insert(context_.end(), tokens.begin(), tokens.end());
}

void RemotePredictor::accept_prediction(const Token& token) {
  post({token}, /*predict=*/false, nullptr);
  context_.push_back(token);
}

void RemotePredictor::rebuild(std::vector<Token> context) {
  // The wire protocol has no rewind; a rebuild opens a fresh session and
  // replays the whole context, so the server re-evaluates it.
  session_id_ = "s" + std::to_string(++session_counter_);
  context_ = std::move(context);
  post(context_, /*predict=*/false, nullptr);
}

Token RemotePredictor::predict_next() {
  if (context_.empty())
    throw std::logic_error("predict_next on empty context");
  Token out;
  post({}, /*predict=*/true, &out);
  return out;
}

}  // namespace simt
