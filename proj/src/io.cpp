#include "simt/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace simt {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::vector<Chunk> chunks_from_json(const json& j) {
  std::vector<Chunk> chunks;
  for (const auto& c : j) {
    Chunk chunk;
    for (const auto& w : c) chunk.push_back(w.get<std::string>());
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

AlignedChunkRecord record_from_json(const json& j) {
  AlignedChunkRecord r;
  r.id = j.at("id").get<std::string>();
  r.src_lang = j.at("src_lang").get<std::string>();
  r.tgt_lang = j.at("tgt_lang").get<std::string>();
  r.latency = latency_from_indicator(j.at("latency").get<std::string>());
  r.source_chunks = chunks_from_json(j.at("source_chunks"));
  r.target_chunks = chunks_from_json(j.at("target_chunks"));
  if (j.contains("quality_score") && !j.at("quality_score").is_null())
    r.quality_score = j.at("quality_score").get<double>();
  return r;
}

json record_to_json(const AlignedChunkRecord& r) {
  json j;
  j["id"] = r.id;
  j["src_lang"] = r.src_lang;
  j["tgt_lang"] = r.tgt_lang;
  j["latency"] = std::string(indicator_text(r.latency));
  j["source_chunks"] = r.source_chunks;
  j["target_chunks"] = r.target_chunks;
  if (r.quality_score) j["quality_score"] = *r.quality_score;
  return j;
}

}  // namespace

CorpusReadResult read_corpus_jsonl(const std::string& path) {
  CorpusReadResult result;
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      result.records.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      result.malformed.push_back({line_no, e.what()});
    }
  }
  return result;
}

void write_corpus_jsonl(const std::string& path,
                        const std::vector<AlignedChunkRecord>& records) {
  auto out = open_out(path);
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

std::map<std::string, double> read_score_sidecar(const std::string& path) {
  std::map<std::string, double> scores;
  auto in = open_in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    scores[j.at("id").get<std::string>()] = j.at("score").get<double>();
  }
  return scores;
}

void write_drop_log_jsonl(const std::string& path,
                          const std::vector<DropEntry>& dropped) {
  auto out = open_out(path);
  for (const auto& d : dropped) {
    json j;
    j["id"] = d.id;
    j["stage"] = d.stage;
    j["reason"] = d.reason;
    out << j.dump() << '\n';
  }
}

void write_sft_jsonl(const std::string& path,
                     const std::vector<SftSequence>& sequences) {
  auto out = open_out(path);
  for (const auto& seq : sequences) {
    json j;
    j["id"] = seq.record_id;
    json tokens = json::array();
    for (const auto& t : seq.tokens) {
      json tok;
      tok["surface"] = t.surface();
      tok["kind"] = std::string(to_string(t.kind()));
      tokens.push_back(std::move(tok));
    }
    j["tokens"] = std::move(tokens);
    j["loss_mask"] = seq.loss_mask;
    out << j.dump() << '\n';
  }
}

std::vector<SftSequence> read_sft_jsonl(const std::string& path) {
  std::vector<SftSequence> sequences;
  auto in = open_in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    SftSequence seq;
    seq.record_id = j.at("id").get<std::string>();
    for (const auto& tok : j.at("tokens"))
      seq.tokens.emplace_back(tok.at("surface").get<std::string>(),
                              token_kind_from_string(tok.at("kind").get<std::string>()));
    seq.loss_mask = j.at("loss_mask").get<std::vector<bool>>();
    if (seq.loss_mask.size() != seq.tokens.size())
      throw std::runtime_error("sft record " + seq.record_id +
                               ": loss_mask length mismatch");
    sequences.push_back(std::move(seq));
  }
  return sequences;
}

void write_traces_jsonl(const std::string& path,
                        const std::vector<TranslationTrace>& traces) {
  auto out = open_out(path);
  for (const auto& t : traces) {
    json j;
    j["record_id"] = t.record_id;
    json emitted = json::array();
    for (const auto& tok : t.emitted) emitted.push_back(tok.surface());
    j["emitted"] = std::move(emitted);
    j["delays"] = t.delays;
    j["emit_times"] = t.emit_times;
    j["total_wall"] = t.total_wall;
    j["forward_evals"] = t.forward_evals;
    j["discarded_predictions"] = t.discarded_predictions;
    j["source_len"] = t.source_len;
    j["chunk_boundaries"] = t.chunk_boundaries;
    j["truncated"] = t.truncated;
    j["anomalies"] = t.anomalies;
    out << j.dump() << '\n';
  }
}

std::vector<TranslationTrace> read_traces_jsonl(const std::string& path) {
  std::vector<TranslationTrace> traces;
  auto in = open_in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    TranslationTrace t;
    t.record_id = j.at("record_id").get<std::string>();
    for (const auto& s : j.at("emitted"))
      t.emitted.emplace_back(s.get<std::string>(), TokenKind::Target);
    t.delays = j.at("delays").get<std::vector<int>>();
    t.emit_times = j.at("emit_times").get<std::vector<double>>();
    t.total_wall = j.at("total_wall").get<double>();
    t.forward_evals = j.at("forward_evals").get<std::int64_t>();
    t.discarded_predictions = j.at("discarded_predictions").get<std::int64_t>();
    t.source_len = j.at("source_len").get<int>();
    t.chunk_boundaries = j.at("chunk_boundaries").get<std::vector<int>>();
    t.truncated = j.at("truncated").get<bool>();
    t.anomalies = j.at("anomalies").get<std::int64_t>();
    t.check();
    traces.push_back(std::move(t));
  }
  return traces;
}

std::vector<WordAlignment> read_alignments(const std::string& path) {
  std::vector<WordAlignment> alignments;
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    WordAlignment a;
    std::istringstream ss(line);
    std::string pair;
    while (ss >> pair) {
      auto dash = pair.find('-');
      if (dash == std::string::npos)
        throw std::runtime_error("alignment line " + std::to_string(line_no) +
                                 ": malformed pair '" + pair + "'");
      a.pairs.emplace_back(std::stoi(pair.substr(0, dash)),
                           std::stoi(pair.substr(dash + 1)));
    }
    alignments.push_back(std::move(a));
  }
  return alignments;
}

std::vector<std::vector<int>> read_gold_policy(const std::string& path) {
  std::vector<std::vector<int>> rows;
  auto in = open_in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<int> row;
    std::istringstream ss(line);
    int v;
    while (ss >> v) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  auto in = open_in(path);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  auto out = open_out(path);
  for (const auto& l : lines) out << l << '\n';
}

std::string report_to_json(const MetricReport& report,
                           const std::map<std::string, std::string>& config_echo) {
  json j;
  j["al"] = report.al;
  j["laal"] = report.laal;
  j["al_ca"] = report.al_ca;
  j["wwt_ms"] = report.wwt_ms;
  j["bleu"] = report.bleu;
  j["hallucination_rate"] =
      report.hallucination_rate ? json(*report.hallucination_rate) : json(nullptr);
  j["policy_a"] = report.policy_a ? json(*report.policy_a) : json(nullptr);
  j["n_sentences"] = report.n_sentences;
  j["config"] = config_echo;
  return j.dump(2);
}

MetricReport report_from_json(const std::string& json_text,
                              std::map<std::string, std::string>* config_echo) {
  json j = json::parse(json_text);
  MetricReport r;
  r.al = j.at("al").get<double>();
  r.laal = j.at("laal").get<double>();
  r.al_ca = j.at("al_ca").get<double>();
  r.wwt_ms = j.at("wwt_ms").get<double>();
  r.bleu = j.at("bleu").get<double>();
  if (!j.at("hallucination_rate").is_null())
    r.hallucination_rate = j.at("hallucination_rate").get<double>();
  if (!j.at("policy_a").is_null()) r.policy_a = j.at("policy_a").get<double>();
  r.n_sentences = j.at("n_sentences").get<int>();
  if (config_echo && j.contains("config"))
    *config_echo = j.at("config").get<std::map<std::string, std::string>>();
  return r;
}

std::string report_csv_header() {
  return "latency_label,al,laal,al_ca,bleu,wwt_ms";
}

std::string report_csv_row(const std::string& label, const MetricReport& report) {
  std::ostringstream ss;
  ss << label << ',' << json(report.al).dump() << ',' << json(report.laal).dump()
     << ',' << json(report.al_ca).dump() << ',' << json(report.bleu).dump() << ','
     << json(report.wwt_ms).dump();
  return ss.str();
}

}  // namespace simt
