#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "simt/curation.hpp"
#include "support.hpp"

using namespace simt;

namespace {

AlignedChunkRecord make_record(std::vector<Chunk> src, std::vector<Chunk> tgt,
                               std::optional<double> score = 90.0) {
  AlignedChunkRecord r;
  r.id = "t";
  r.src_lang = "de";
  r.tgt_lang = "en";
  r.latency = LatencyLevel::Low;
  r.source_chunks = std::move(src);
  r.target_chunks = std::move(tgt);
  r.quality_score = score;
  return r;
}

Chunk words(int n, const std::string& prefix = "w") {
  Chunk c;
  for (int i = 0; i < n; ++i) c.push_back(prefix + std::to_string(i));
  return c;
}

std::vector<std::string> flatten(const std::vector<Chunk>& chunks) {
  std::vector<std::string> out;
  for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

TEST_CASE("filter_source_length boundary") {
  auto r19 = make_record({words(19)}, {words(5)});
  auto r20 = make_record({words(20)}, {words(5)});
  auto drop = filter_source_length(r19);
  REQUIRE(drop.has_value());
  CHECK(*drop == "source length 19 < 20");
  CHECK_FALSE(filter_source_length(r20).has_value());
  CHECK_FALSE(filter_source_length(make_record({{"a"}}, {{"X"}}), 1).has_value());
}

TEST_CASE("filter_alignment") {
  CHECK_FALSE(filter_alignment(make_record({words(2), words(2), words(2)},
                                           {words(1), words(1), words(1)}))
                  .has_value());
  CHECK(filter_alignment(make_record({words(2), words(2), words(2)},
                                     {words(1), words(1)}))
            .has_value());
  auto empty = filter_alignment(make_record({}, {}));
  REQUIRE(empty.has_value());
  CHECK(*empty == "empty record");
}

TEST_CASE("filter_quality boundary and unscored error") {
  CHECK(filter_quality(make_record({words(3)}, {words(3)}, 79.9)).has_value());
  CHECK_FALSE(filter_quality(make_record({words(3)}, {words(3)}, 80.0)).has_value());
  CHECK_THROWS_AS(
      filter_quality(make_record({words(3)}, {words(3)}, std::nullopt)),
      std::invalid_argument);
}

TEST_CASE("merge_short_chunks") {
  SUBCASE("short first chunk merges forward") {
    auto r = make_record({{"a"}, {"b", "c"}}, {{"X"}, {"Y"}});
    auto m = merge_short_chunks(r);
    CHECK(m.source_chunks == std::vector<Chunk>{{"a", "b", "c"}});
    CHECK(m.target_chunks == std::vector<Chunk>{{"X", "Y"}});
  }
  SUBCASE("no short chunk leaves the record unchanged") {
    auto r = make_record({{"a", "b"}, {"c", "d"}}, {{"X", "Q"}, {"Y", "R"}});
    auto m = merge_short_chunks(r);
    CHECK(m.source_chunks == r.source_chunks);
    CHECK(m.target_chunks == r.target_chunks);
  }
  SUBCASE("short last chunk merges into its predecessor") {
    auto r = make_record({{"a", "b"}, {"c"}}, {{"X"}, {"Y"}});
    auto m = merge_short_chunks(r);
    CHECK(m.source_chunks == std::vector<Chunk>{{"a", "b", "c"}});
    CHECK(m.target_chunks == std::vector<Chunk>{{"X", "Y"}});
  }
  SUBCASE("cjk chunks use the character threshold") {
    auto r = make_record({{"你好你"}, {"世界世界"}}, {{"X"}, {"Y"}});
    auto m = merge_short_chunks(r);  // 3 chars < 4: merge forward
    CHECK(m.source_chunks == std::vector<Chunk>{{"你好你", "世界世界"}});
    auto ok = make_record({{"你好你好"}, {"世界世界"}}, {{"X"}, {"Y"}});
    auto kept = merge_short_chunks(ok);
    CHECK(kept.source_chunks.size() == 2);
  }
  SUBCASE("target-side judging") {
    auto r = make_record({{"a", "b"}, {"c", "d"}}, {{"X"}, {"Y", "Z"}});
    auto m = merge_short_chunks(r, 2, 4, MergeSide::Target);
    CHECK(m.source_chunks == std::vector<Chunk>{{"a", "b", "c", "d"}});
    CHECK(m.target_chunks == std::vector<Chunk>{{"X", "Y", "Z"}});
  }
}

TEST_CASE("merge properties: word preservation and idempotence") {
  std::mt19937 rng(23);
  for (int i = 0; i < 300; ++i) {
    auto r = simt::testing::random_record(rng, 8, 4);
    auto m = merge_short_chunks(r);
    CHECK(flatten(m.source_chunks) == flatten(r.source_chunks));
    CHECK(flatten(m.target_chunks) == flatten(r.target_chunks));
    auto m2 = merge_short_chunks(m);
    CHECK(m2.source_chunks == m.source_chunks);
    CHECK(m2.target_chunks == m.target_chunks);
  }
}

TEST_CASE("pipeline composition and idempotence") {
  CurationConfig cfg;
  cfg.min_source_words = 5;

  std::vector<AlignedChunkRecord> corpus;
  auto ok = make_record({words(3), words(3)}, {words(2), words(2)});
  ok.id = "ok";
  corpus.push_back(ok);
  auto short_src = make_record({words(4)}, {words(2)});
  short_src.id = "short";
  corpus.push_back(short_src);
  auto misaligned = make_record({words(3), words(3)}, {words(6)});
  misaligned.id = "misaligned";
  corpus.push_back(misaligned);
  auto low_q = make_record({words(3), words(3)}, {words(2), words(2)}, 50.0);
  low_q.id = "lowq";
  corpus.push_back(low_q);

  auto result = run_pipeline(corpus, cfg);
  REQUIRE(result.kept.size() == 1);
  CHECK(result.kept[0].id == "ok");
  REQUIRE(result.dropped.size() == 3);
  CHECK(result.dropped[0].stage == "source_length");
  CHECK(result.dropped[1].stage == "alignment");
  CHECK(result.dropped[2].stage == "quality");

  // output closed under validation
  for (const auto& r : result.kept) CHECK(validate_record(r).empty());

  // double-run fixpoint
  auto again = run_pipeline(result.kept, cfg);
  REQUIRE(again.kept.size() == result.kept.size());
  for (std::size_t i = 0; i < again.kept.size(); ++i) {
    CHECK(again.kept[i].source_chunks == result.kept[i].source_chunks);
    CHECK(again.kept[i].target_chunks == result.kept[i].target_chunks);
  }
}

TEST_CASE("unscored record is an error, not a drop") {
  CurationConfig cfg;
  cfg.min_source_words = 1;
  auto r = make_record({words(3)}, {words(3)}, std::nullopt);
  auto result = run_pipeline({r}, cfg);
  CHECK(result.kept.empty());
  CHECK(result.dropped.empty());
  REQUIRE(result.errors.size() == 1);

  cfg.quality_filter = false;
  auto kept = run_pipeline({r}, cfg);
  CHECK(kept.kept.size() == 1);
  CHECK(kept.errors.empty());
}

TEST_CASE("empty corpus yields empty output") {
  auto result = run_pipeline({}, CurationConfig{});
  CHECK(result.kept.empty());
  CHECK(result.dropped.empty());
}

TEST_CASE("kept set is independent of pure-filter order") {
  // run the three record-local predicates in every order; the surviving set
  // must be identical (only drop attribution may differ)
  std::mt19937 rng(99);
  CurationConfig cfg;
  cfg.min_source_words = 10;
  using Pred = std::function<bool(const AlignedChunkRecord&)>;
  std::vector<Pred> preds = {
      [&](const AlignedChunkRecord& r) {
        return !filter_source_length(r, cfg.min_source_words).has_value();
      },
      [](const AlignedChunkRecord& r) { return !filter_alignment(r).has_value(); },
      [&](const AlignedChunkRecord& r) {
        return r.quality_score && !filter_quality(r, cfg.quality_threshold).has_value();
      }};
  std::vector<AlignedChunkRecord> corpus;
  std::uniform_real_distribution<double> score(60.0, 100.0);
  for (int i = 0; i < 60; ++i) {
    auto r = simt::testing::random_record(rng, 6, 6);
    r.id = "r" + std::to_string(i);
    r.quality_score = score(rng);
    if (i % 7 == 0) r.target_chunks.push_back({"extra"});
    corpus.push_back(std::move(r));
  }
  std::vector<int> order = {0, 1, 2};
  std::vector<std::vector<std::string>> kept_sets;
  do {
    std::vector<std::string> kept;
    for (const auto& r : corpus) {
      bool keep = true;
      for (int p : order)
        if (!preds[static_cast<std::size_t>(p)](r)) {
          keep = false;
          break;
        }
      if (keep) kept.push_back(r.id);
    }
    kept_sets.push_back(std::move(kept));
  } while (std::next_permutation(order.begin(), order.end()));
  for (std::size_t i = 1; i < kept_sets.size(); ++i)
    CHECK(kept_sets[i] == kept_sets[0]);
}
