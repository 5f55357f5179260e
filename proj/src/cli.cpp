#include "simt/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "simt/curation.hpp"
#include "simt/engine.hpp"
#include "simt/io.hpp"
#include "simt/metrics.hpp"
#include "simt/predictor.hpp"
#include "simt/protocol.hpp"
#include "simt/remote.hpp"
#include "simt/text.hpp"

namespace simt {

namespace {

using nlohmann::json;

/// Flat-key JSON config mirroring the CLI flags. Values apply only where the
/// corresponding flag was not given on the command line.
class ConfigFile {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    data_ = json::parse(in);
    if (!data_.is_object())
      throw std::runtime_error("config must be a flat JSON object");
  }

  template <typename T>
  void apply(const CLI::App& app, const std::string& flag,
             const std::string& key, T& value) const {
    if (data_.is_null() || !data_.contains(key)) return;
    const CLI::Option* opt = app.get_option_no_throw(flag);
    if (opt && opt->count() > 0) return;  // CLI wins
    value = data_.at(key).get<T>();
  }

 private:
  json data_;
};

struct TimingOptions {
  std::string mode = "simulated";
  double interval = 0.3;
  double compute = 0.01;
  int max_tokens_per_write = 64;
  int max_total_target = 0;

  EngineConfig engine_config(LatencyLevel latency) const {
    EngineConfig cfg;
    cfg.latency = latency;
    cfg.mode = mode == "wallclock" ? TimeMode::WallClock : TimeMode::SimulatedTime;
    cfg.source_arrival_interval_s = interval;
    cfg.per_token_compute_seconds = compute;
    cfg.max_tokens_per_write = max_tokens_per_write;
    cfg.max_total_target = max_total_target;
    return cfg;
  }
};

int cmd_curate(const std::string& input, const std::string& output,
               const std::string& drop_log, const std::string& scores_path,
               const CurationConfig& config) {
  CorpusReadResult corpus = read_corpus_jsonl(input);
  for (const auto& m : corpus.malformed)
    std::cerr << "malformed line " << m.line_number << ": " << m.message << '\n';

  if (!scores_path.empty()) {
    auto scores = read_score_sidecar(scores_path);
    for (auto& r : corpus.records) {
      auto it = scores.find(r.id);
      if (it != scores.end()) r.quality_score = it->second;
    }
  }

  PipelineResult result = run_pipeline(corpus.records, config);
  write_corpus_jsonl(output, result.kept);
  if (!drop_log.empty()) write_drop_log_jsonl(drop_log, result.dropped);
  for (const auto& e : result.errors) std::cerr << "error: " << e << '\n';

  std::map<std::string, int> per_stage;
  for (const auto& d : result.dropped) ++per_stage[d.stage];
  std::cout << "input records: " << corpus.records.size() << '\n';
  std::cout << "kept: " << result.kept.size() << '\n';
  for (const auto& [stage, n] : per_stage)
    std::cout << "dropped at " << stage << ": " << n << '\n';
  std::cout << "errors: " << result.errors.size() << '\n';

  return (corpus.malformed.empty() && result.errors.empty()) ? 0 : 1;
}

struct SimulateJob {
  std::string policy = "adaptive";
  std::string latency = "medium";
  int k = 3;
  std::string backend = "mock";
  std::string url;
  double timeout = 30.0;
  int retries = 2;
  std::string prompt_template;
  TimingOptions timing;
  int jobs = 1;
};

struct SessionResult {
  std::optional<TranslationTrace> trace;
  std::string hypothesis;
  std::string error;
};

SessionResult simulate_one(const AlignedChunkRecord& record,
                           const SimulateJob& opt, const PromptTemplate& tpl) {
  SessionResult out;
  try {
    const bool offline = opt.policy == "offline";
    const LatencyLevel latency =
        offline ? LatencyLevel::Offline : latency_from_indicator(opt.latency);
    EngineConfig cfg = opt.timing.engine_config(latency);
    const std::vector<std::string> source = record.flat_source();
    const std::vector<Token> prompt =
        tpl.render(record.src_lang, record.tgt_lang, latency);

    std::unique_ptr<Predictor> predictor;
    if (opt.backend == "remote") {
      RemoteConfig rc;
      rc.base_url = opt.url;
      rc.timeout_s = opt.timeout;
      rc.retries = opt.retries;
      predictor = std::make_unique<RemotePredictor>(rc);
    } else if (opt.policy == "wait-k") {
      predictor = std::make_unique<ReferencePredictor>(record.flat_target());
    } else {
      // Scripted replay of the record's own interleaved sequence, under the
      // prompt the session will actually use.
      AlignedChunkRecord scripted = record;
      scripted.latency = latency;
      if (offline) {
        scripted.source_chunks = {source};
        scripted.target_chunks = {record.flat_target()};
      }
      predictor = mock_predictor_from_script(interleave(scripted, tpl));
    }

    TranslationTrace trace;
    if (opt.policy == "wait-k") {
      trace = run_wait_k(record.id, source, opt.k, *predictor, cfg, prompt);
    } else {
      predictor->extend(prompt);
      trace = offline ? run_offline(record.id, source, *predictor, cfg)
                      : run_adaptive(record.id, source, *predictor, cfg);
    }
    std::vector<std::string> words;
    for (const auto& t : trace.emitted) words.push_back(t.surface());
    out.hypothesis = join_words(words);
    out.trace = std::move(trace);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

int cmd_simulate(const std::string& corpus_path, const std::string& traces_path,
                 const std::string& hyp_path, const SimulateJob& opt) {
  CorpusReadResult corpus = read_corpus_jsonl(corpus_path);
  for (const auto& m : corpus.malformed)
    std::cerr << "malformed line " << m.line_number << ": " << m.message << '\n';

  const PromptTemplate tpl = opt.prompt_template.empty()
                                 ? PromptTemplate::default_template()
                                 : PromptTemplate(opt.prompt_template);

  std::vector<SessionResult> results(corpus.records.size());
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || corpus.records.size() <= 1) {
    for (std::size_t i = 0; i < corpus.records.size(); ++i)
      results[i] = simulate_one(corpus.records[i], opt, tpl);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < corpus.records.size();
             i = next.fetch_add(1))
          results[i] = simulate_one(corpus.records[i], opt, tpl);
      });
    }
    for (auto& t : workers) t.join();
  }

  std::vector<TranslationTrace> traces;
  std::vector<std::string> hyps;
  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].error.empty()) {
      ++failures;
      std::cerr << "record " << corpus.records[i].id << ": " << results[i].error
                << '\n';
      continue;
    }
    traces.push_back(std::move(*results[i].trace));
    hyps.push_back(results[i].hypothesis);
  }
  write_traces_jsonl(traces_path, traces);
  if (!hyp_path.empty()) write_lines(hyp_path, hyps);
  std::cout << "sessions: " << traces.size() << ", failures: " << failures
            << '\n';
  return (failures == 0 && corpus.malformed.empty()) ? 0 : 1;
}

struct EvaluateOptions {
  std::string alignments;
  std::string gold_policy;
  double interval = 0.3;
  std::string al_aggregate = "mean";
  bool bleu_add_one = false;
  std::string label;
};

int cmd_evaluate(const std::string& traces_path, const std::string& refs_path,
                 const std::string& report_path, const std::string& csv_path,
                 const EvaluateOptions& opt) {
  std::vector<TranslationTrace> traces = read_traces_jsonl(traces_path);
  std::vector<std::string> ref_lines = read_lines(refs_path);
  if (traces.size() != ref_lines.size()) {
    std::cerr << "count mismatch: " << traces.size() << " traces vs "
              << ref_lines.size() << " references\n";
    return 1;
  }
  if (traces.empty()) {
    std::cerr << "empty trace file\n";
    return 1;
  }

  std::vector<std::vector<std::string>> hyps;
  std::vector<std::vector<std::string>> refs;
  std::vector<int> ref_lens;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    std::vector<std::string> hyp;
    for (const auto& t : traces[i].emitted) hyp.push_back(t.surface());
    hyps.push_back(std::move(hyp));
    refs.push_back(word_units(ref_lines[i]));
    ref_lens.push_back(static_cast<int>(refs.back().size()));
  }

  MetricReport report;
  report.n_sentences = static_cast<int>(traces.size());
  const AlAggregation agg = opt.al_aggregate == "pooled"
                                ? AlAggregation::PooledByCutoff
                                : AlAggregation::MeanPerSentence;
  CorpusLatency lat = corpus_latency(traces, ref_lens, opt.interval, agg);
  report.al = lat.al;
  report.laal = lat.laal;
  report.al_ca = lat.al_ca;
  report.wwt_ms = word_wall_time_ms(traces);
  report.bleu = corpus_bleu(hyps, refs, opt.bleu_add_one);

  if (!opt.alignments.empty()) {
    auto alignments = read_alignments(opt.alignments);
    if (alignments.size() != traces.size()) {
      std::cerr << "count mismatch: " << traces.size() << " traces vs "
                << alignments.size() << " alignment lines\n";
      return 1;
    }
    std::size_t unaligned = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const std::size_t y = hyps[i].size();
      if (y == 0) continue;
      std::vector<bool> aligned(y, false);
      for (const auto& [src, tgt] : alignments[i].pairs)
        if (tgt >= 0 && static_cast<std::size_t>(tgt) < y)
          aligned[static_cast<std::size_t>(tgt)] = true;
      for (bool a : aligned)
        if (!a) ++unaligned;
      total += y;
    }
    if (total > 0)
      report.hallucination_rate =
          static_cast<double>(unaligned) / static_cast<double>(total);
  }

  if (!opt.gold_policy.empty()) {
    auto gold = read_gold_policy(opt.gold_policy);
    if (gold.size() != traces.size()) {
      std::cerr << "count mismatch: " << traces.size() << " traces vs "
                << gold.size() << " gold policy lines\n";
      return 1;
    }
    std::size_t satisfied = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
      if (gold[i].size() != traces[i].delays.size()) {
        std::cerr << "gold policy length mismatch at sentence " << i << ": "
                  << gold[i].size() << " vs " << traces[i].delays.size() << '\n';
        return 1;
      }
      for (std::size_t j = 0; j < gold[i].size(); ++j)
        if (gold[i][j] <= traces[i].delays[j]) ++satisfied;
      total += gold[i].size();
    }
    if (total > 0)
      report.policy_a = static_cast<double>(satisfied) / static_cast<double>(total);
  }

  std::map<std::string, std::string> echo;
  echo["source_arrival_interval_s"] = json(opt.interval).dump();
  echo["al_aggregate"] = opt.al_aggregate;
  echo["bleu_add_one"] = opt.bleu_add_one ? "true" : "false";
  if (!opt.label.empty()) echo["latency_label"] = opt.label;

  const std::string report_json = report_to_json(report, echo);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write " << report_path << '\n';
      return 1;
    }
    out << report_json << '\n';
  }
  std::cout << report_json << '\n';
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << report_csv_header() << '\n'
        << report_csv_row(opt.label, report) << '\n';
  }
  return 0;
}

int cmd_curve(const std::vector<std::string>& run_dirs,
              const std::string& output) {
  struct Row {
    std::string label;
    MetricReport report;
  };
  std::vector<Row> rows;
  std::vector<std::string> missing;
  for (const auto& dir : run_dirs) {
    const std::filesystem::path path = std::filesystem::path(dir) / "report.json";
    std::ifstream in(path);
    if (!in) {
      missing.push_back(path.string());
      continue;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::map<std::string, std::string> echo;
    MetricReport report = report_from_json(ss.str(), &echo);
    std::string label = echo.count("latency_label") ? echo.at("latency_label")
                                                    : std::filesystem::path(dir)
                                                          .filename()
                                                          .string();
    rows.push_back({std::move(label), report});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.report.al < b.report.al;
  });
  std::map<std::string, int> label_counts;
  for (const auto& r : rows)
    if (++label_counts[r.label] == 2)
      std::cerr << "warning: duplicate latency label '" << r.label << "'\n";

  std::ofstream out(output);
  if (!out) {
    std::cerr << "cannot write " << output << '\n';
    return 1;
  }
  out << report_csv_header() << '\n';
  for (const auto& r : rows) out << report_csv_row(r.label, r.report) << '\n';
  for (const auto& m : missing) std::cerr << "missing report: " << m << '\n';
  return missing.empty() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"streaming simultaneous translation toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config file")
      ->envname("SIMT_CONFIG");
  ConfigFile config;

  // curate
  auto* curate = app.add_subcommand("curate", "filter and merge a chunk corpus");
  std::string cur_input, cur_output = "kept.jsonl", cur_drop = "drops.jsonl",
              cur_scores;
  CurationConfig cur_cfg;
  std::string merge_side = "source";
  bool no_quality = false;
  curate->add_option("input", cur_input, "input corpus JSONL")->required();
  curate->add_option("--output", cur_output, "kept corpus JSONL");
  curate->add_option("--drop-log", cur_drop, "drop log JSONL");
  curate->add_option("--scores", cur_scores, "quality score sidecar JSONL")
      ->envname("SIMT_SCORES");
  curate->add_option("--min-source-words", cur_cfg.min_source_words);
  curate->add_option("--quality-threshold", cur_cfg.quality_threshold);
  curate->add_flag("--no-quality-filter", no_quality);
  curate->add_option("--merge-side", merge_side, "source|target|either");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run inference sessions");
  std::string sim_corpus, sim_traces = "traces.jsonl", sim_hyp = "hyps.txt";
  SimulateJob sim;
  simulate->add_option("corpus", sim_corpus, "corpus JSONL")->required();
  simulate->add_option("--traces", sim_traces, "output traces JSONL");
  simulate->add_option("--hyp", sim_hyp, "output hypothesis text");
  simulate->add_option("--policy", sim.policy, "adaptive|wait-k|offline");
  simulate->add_option("--latency", sim.latency,
                       "low|low-medium|medium|medium-high|high");
  simulate->add_option("--k", sim.k, "wait-k read-ahead");
  simulate->add_option("--backend", sim.backend, "mock|remote");
  simulate->add_option("--url", sim.url, "remote predictor base URL")
      ->envname("SIMT_URL");
  simulate->add_option("--timeout", sim.timeout, "remote timeout seconds");
  simulate->add_option("--retries", sim.retries, "remote retry count");
  simulate->add_option("--prompt-template", sim.prompt_template);
  simulate->add_option("--mode", sim.timing.mode, "simulated|wallclock");
  simulate->add_option("--interval", sim.timing.interval,
                       "source arrival interval seconds");
  simulate->add_option("--compute", sim.timing.compute,
                       "simulated seconds per forward evaluation");
  simulate->add_option("--max-tokens-per-write", sim.timing.max_tokens_per_write);
  simulate->add_option("--max-total-target", sim.timing.max_total_target);
  simulate->add_option("--jobs", sim.jobs, "parallel sessions");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "compute the metric report");
  std::string eval_traces, eval_refs, eval_report = "report.json", eval_csv;
  EvaluateOptions eval;
  evaluate->add_option("traces", eval_traces, "traces JSONL")->required();
  evaluate->add_option("references", eval_refs, "reference text, one per line")
      ->required();
  evaluate->add_option("--report", eval_report, "output report JSON");
  evaluate->add_option("--csv", eval_csv, "output CSV row");
  evaluate->add_option("--alignments", eval.alignments,
                       "word alignment file (src-tgt pairs per line)");
  evaluate->add_option("--gold-policy", eval.gold_policy,
                       "gold aligned source positions per line");
  evaluate->add_option("--interval", eval.interval,
                       "source arrival interval seconds");
  evaluate->add_option("--al-aggregate", eval.al_aggregate, "mean|pooled");
  evaluate->add_flag("--bleu-add-one", eval.bleu_add_one,
                     "add-one BLEU smoothing for tiny corpora");
  evaluate->add_option("--label", eval.label, "latency label for the CSV row");

  // curve
  auto* curve = app.add_subcommand("curve", "collect reports into a curve CSV");
  std::vector<std::string> curve_dirs;
  std::string curve_out = "curve.csv";
  curve->add_option("runs", curve_dirs, "run directories containing report.json")
      ->required();
  curve->add_option("--output", curve_out, "output CSV path");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) config.load(config_path);

    config.apply(*curate, "--min-source-words", "min_source_words",
                 cur_cfg.min_source_words);
    config.apply(*curate, "--quality-threshold", "quality_threshold",
                 cur_cfg.quality_threshold);
    config.apply(*curate, "--merge-side", "merge_side", merge_side);
    config.apply(*simulate, "--policy", "policy", sim.policy);
    config.apply(*simulate, "--latency", "latency", sim.latency);
    config.apply(*simulate, "--k", "k", sim.k);
    config.apply(*simulate, "--backend", "backend", sim.backend);
    config.apply(*simulate, "--url", "url", sim.url);
    config.apply(*simulate, "--prompt-template", "prompt_template",
                 sim.prompt_template);
    config.apply(*simulate, "--mode", "mode", sim.timing.mode);
    config.apply(*simulate, "--interval", "interval", sim.timing.interval);
    config.apply(*simulate, "--compute", "compute", sim.timing.compute);
    config.apply(*simulate, "--max-tokens-per-write", "max_tokens_per_write",
                 sim.timing.max_tokens_per_write);
    config.apply(*simulate, "--max-total-target", "max_total_target",
                 sim.timing.max_total_target);
    config.apply(*simulate, "--jobs", "jobs", sim.jobs);
    config.apply(*evaluate, "--interval", "interval", eval.interval);
    config.apply(*evaluate, "--al-aggregate", "al_aggregate", eval.al_aggregate);
    config.apply(*evaluate, "--label", "label", eval.label);

    if (curate->parsed()) {
      cur_cfg.quality_filter = !no_quality;
      cur_cfg.merge_side = merge_side_from_string(merge_side);
      return cmd_curate(cur_input, cur_output, cur_drop, cur_scores, cur_cfg);
    }
    if (simulate->parsed())
      return cmd_simulate(sim_corpus, sim_traces, sim_hyp, sim);
    if (evaluate->parsed())
      return cmd_evaluate(eval_traces, eval_refs, eval_report, eval_csv, eval);
    if (curve->parsed()) return cmd_curve(curve_dirs, curve_out);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("simt");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace simt
