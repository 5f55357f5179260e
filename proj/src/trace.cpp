#include "simt/trace.hpp"

#include <stdexcept>

namespace simt {

void TranslationTrace::check() const {
  if (delays.size() != emitted.size())
    throw std::invalid_argument("trace: |delays| != |emitted|");
  if (emit_times.size() != emitted.size())
    throw std::invalid_argument("trace: |emit_times| != |emitted|");
  int prev = 1;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    if (delays[i] < prev)
      throw std::invalid_argument("trace: delays not non-decreasing at " +
                                  std::to_string(i));
    if (delays[i] < 1 || delays[i] > source_len)
      throw std::invalid_argument("trace: delay out of [1, source_len] at " +
                                  std::to_string(i));
    prev = delays[i];
  }
  for (std::size_t i = 1; i < emit_times.size(); ++i)
    if (emit_times[i] < emit_times[i - 1])
      throw std::invalid_argument("trace: emit_times not non-decreasing at " +
                                  std::to_string(i));
  for (const auto& t : emitted)
    if (t.kind() != TokenKind::Target)
      throw std::invalid_argument("trace: emitted token is not Target kind");
  if (forward_evals < static_cast<std::int64_t>(emitted.size()) + discarded_predictions)
    throw std::invalid_argument("trace: forward_evals below emitted + discarded");
}

}  // namespace simt
