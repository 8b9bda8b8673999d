// Copyright 2026 The score-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCORE_REPORT_HPP
#define SCORE_REPORT_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "score/category.hpp"
#include "score/document.hpp"
#include "score/hierarchy.hpp"
#include "score/tableeval.hpp"
#include "score/textmetrics.hpp"

namespace score {

enum class OutputFormat { Json, Csv, Markdown };

std::string_view to_string(OutputFormat f);

// Every knob of one evaluation run. Echoed verbatim into each report.
struct RunConfig {
  TokenizerConfig tokenizer;
  int shift_n = 2;
  double det_tau = 0.5;
  double det_beta = 1.0;
  double sim_threshold = 0.5;
  double diff_epsilon = 0.01;
  double index_gate = 0.5;
  F1Averaging consistency_averaging = F1Averaging::Macro;
  std::string category_map_path;  // empty: built-in map
  std::vector<OutputFormat> formats = {OutputFormat::Json, OutputFormat::Csv,
                                       OutputFormat::Markdown};

  // Throws Error{InvalidConfig} for out-of-range values.
  void validate() const;
};

// Applies one key=value setting. Throws Error{InvalidConfig}.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Flat "key = value" lines with '#' comments, layered over `base`.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

std::vector<OutputFormat> parse_formats(std::string_view list);

nlohmann::ordered_json to_json(const RunConfig& cfg);

struct TablePairScore {
  std::size_t gt = 0;    // index among the page's GT tables
  std::size_t pred = 0;  // index among the page's predicted tables
  double similarity = 0.0;
  CellAccuracy accuracy;
  double teds = 0.0;
};

struct TableScores {
  std::size_t gt_tables = 0;
  std::size_t pred_tables = 0;
  DetectionResult detection;
  // Means over GT tables with unmatched ones counted as 0. Unset when the
  // page has no GT table.
  std::optional<double> content_acc;
  std::optional<double> index_acc;
  std::optional<double> teds;
  std::vector<TablePairScore> pairs;
};

struct PageReport {
  std::string page_id;
  FidelityScores fidelity;
  std::optional<TableScores> table;  // present iff either side has a table
  double consistency = 1.0;
  ConfusionMatrix confusion;
  std::size_t gt_elements = 0;
  std::size_t pred_elements = 0;
  std::size_t matched_elements = 0;
  std::vector<std::string> notices;
};

PageReport evaluate_page(const PagePair& pair, const RunConfig& cfg, const CategoryMap& map);

// Evaluates pages on `jobs` worker threads; output order follows `pairs`.
std::vector<PageReport> evaluate_pages(std::span<const PagePair> pairs, const RunConfig& cfg,
                                       const CategoryMap& map, int jobs = 1);

struct MetricMean {
  double mean = 0.0;
  std::size_t pages = 0;  // pages on which the metric is defined
};

struct AggregateReport {
  std::size_t page_count = 0;
  MetricMean adjusted_ned;
  MetricMean ned;
  MetricMean tokens_added;
  MetricMean tokens_found;
  MetricMean content_acc;
  MetricMean index_acc;
  MetricMean detection_f1;
  MetricMean teds;
  MetricMean consistency;
  std::size_t diff_count = 0;
  std::optional<double> diff_avg;  // set only when diff_count > 0
  std::size_t detection_tp = 0;
  std::size_t detection_fp = 0;
  std::size_t detection_fn = 0;
  ConfusionMatrix confusion;  // summed over pages
  double dataset_consistency = 1.0;
  RunConfig config;
  std::vector<std::string> notices;  // run-level (pairing) notices
};

// Unweighted per-page means, accumulated in page_id order. CER and WER stay
// per-page baselines and are not aggregated.
// Throws Error{EmptyDataset} for an empty report list.
AggregateReport aggregate(std::span<const PageReport> reports, const RunConfig& cfg);

bool is_diff_page(const PageReport& r, double diff_epsilon);

nlohmann::ordered_json to_json(const PageReport& r);
nlohmann::ordered_json to_json(const AggregateReport& a);

std::string render(const AggregateReport& aggregate, std::span<const PageReport> pages,
                   OutputFormat format);

// File name used under --out for each format.
std::string_view output_file_name(OutputFormat format);

}  // namespace score

#endif  // SCORE_REPORT_HPP
