#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simt/record.hpp"
#include "simt/text.hpp"
#include "simt/token.hpp"
#include "simt/trace.hpp"
#include "support.hpp"

using namespace simt;

TEST_CASE("signal tokens enforce canonical surfaces") {
  CHECK_THROWS_AS(Token("<|eor|>", TokenKind::EndOfRead), std::invalid_argument);
  CHECK_THROWS_AS(Token("x", TokenKind::EndOfWrite), std::invalid_argument);
  CHECK(Token::end_of_read().surface() == "<|end-of-read|>");
  CHECK(Token::end_of_write().surface() == "<|end-of-write|>");
  CHECK_THROWS_AS(Token("", TokenKind::Source), std::invalid_argument);
  CHECK_THROWS_AS(Token("", TokenKind::Prompt), std::invalid_argument);
  CHECK_NOTHROW(Token("hello", TokenKind::Target));
}

TEST_CASE("latency indicators round-trip") {
  for (auto level : {LatencyLevel::Low, LatencyLevel::LowMedium,
                     LatencyLevel::Medium, LatencyLevel::MediumHigh,
                     LatencyLevel::High, LatencyLevel::Offline})
    CHECK(latency_from_indicator(indicator_text(level)) == level);
  CHECK_THROWS(latency_from_indicator("ultra"));
}

TEST_CASE("validate_record") {
  AlignedChunkRecord r;
  r.id = "x";
  r.src_lang = "de";
  r.tgt_lang = "en";
  r.latency = LatencyLevel::Low;
  r.source_chunks = {{"a", "b"}, {"c"}};
  r.target_chunks = {{"X"}, {"Y"}};

  SUBCASE("aligned record is ok") { CHECK(validate_record(r).empty()); }

  SUBCASE("unequal chunk counts") {
    r.source_chunks = {{"a"}};
    auto v = validate_record(r);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "unequal chunk counts 1 vs 2");
  }

  SUBCASE("offline requires a single chunk") {
    r.latency = LatencyLevel::Offline;
    CHECK_FALSE(validate_record(r).empty());
    r.source_chunks = {{"a"}};
    r.target_chunks = {{"X"}};
    CHECK(validate_record(r).empty());
  }

  SUBCASE("empty chunks are violations with indices") {
    r.source_chunks = {{"a", "b"}, {}};
    auto v = validate_record(r);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("index 1") != std::string::npos);
  }
}

TEST_CASE("validated records always have equal chunk counts") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto r = simt::testing::random_record(rng);
    if (validate_record(r).empty())
      CHECK(r.source_chunks.size() == r.target_chunks.size());
  }
}

TEST_CASE("trace invariants are checked") {
  TranslationTrace t;
  t.record_id = "x";
  t.source_len = 3;
  t.emitted = {Token("a", TokenKind::Target), Token("b", TokenKind::Target)};
  t.delays = {2, 3};
  t.emit_times = {0.1, 0.2};
  t.forward_evals = 10;
  CHECK_NOTHROW(t.check());

  SUBCASE("decreasing delays rejected") {
    t.delays = {3, 2};
    CHECK_THROWS_AS(t.check(), std::invalid_argument);
  }
  SUBCASE("delay above source length rejected") {
    t.delays = {2, 4};
    CHECK_THROWS_AS(t.check(), std::invalid_argument);
  }
  SUBCASE("emit times must be non-decreasing") {
    t.emit_times = {0.2, 0.1};
    CHECK_THROWS_AS(t.check(), std::invalid_argument);
  }
  SUBCASE("forward_evals floor") {
    t.forward_evals = 1;
    t.discarded_predictions = 5;
    CHECK_THROWS_AS(t.check(), std::invalid_argument);
  }
}

TEST_CASE("cjk detection and unit counts") {
  CHECK(is_cjk_chunk({"你好", "世界"}));
  CHECK_FALSE(is_cjk_chunk({"hello", "world"}));
  CHECK(chunk_unit_count({"你好", "世界"}) == 4);   // characters
  CHECK(chunk_unit_count({"hello", "world"}) == 2);  // words
  auto units = word_units("你好世界");
  CHECK(units.size() == 4);
  CHECK(units[0] == "你");
  CHECK(word_units("hello world") == std::vector<std::string>{"hello", "world"});
}
