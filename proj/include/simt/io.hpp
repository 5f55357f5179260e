#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simt/curation.hpp"
#include "simt/protocol.hpp"
#include "simt/record.hpp"
#include "simt/trace.hpp"

namespace simt {

struct MalformedLine {
  std::size_t line_number;  // 1-based
  std::string message;
};

struct CorpusReadResult {
  std::vector<AlignedChunkRecord> records;
  std::vector<MalformedLine> malformed;
};

CorpusReadResult read_corpus_jsonl(const std::string& path);
void write_corpus_jsonl(const std::string& path,
                        const std::vector<AlignedChunkRecord>& records);

/// Score sidecar: one {"id": ..., "score": ...} object per line.
std::map<std::string, double> read_score_sidecar(const std::string& path);

void write_drop_log_jsonl(const std::string& path,
                          const std::vector<DropEntry>& dropped);

/// Training-format export: {"id", "tokens": [{"surface","kind"}], "loss_mask"}.
void write_sft_jsonl(const std::string& path,
                     const std::vector<SftSequence>& sequences);
std::vector<SftSequence> read_sft_jsonl(const std::string& path);

void write_traces_jsonl(const std::string& path,
                        const std::vector<TranslationTrace>& traces);
std::vector<TranslationTrace> read_traces_jsonl(const std::string& path);

/// One "src-tgt src-tgt ..." line of zero-based index pairs per sentence.
std::vector<WordAlignment> read_alignments(const std::string& path);

/// One line of space-separated 1-based source positions per sentence.
std::vector<std::vector<int>> read_gold_policy(const std::string& path);

std::vector<std::string> read_lines(const std::string& path);
void write_lines(const std::string& path, const std::vector<std::string>& lines);

std::string report_to_json(const MetricReport& report,
                           const std::map<std::string, std::string>& config_echo);
MetricReport report_from_json(const std::string& json_text,
                              std::map<std::string, std::string>* config_echo = nullptr);

std::string report_csv_header();
std::string report_csv_row(const std::string& label, const MetricReport& report);

}  // namespace simt
