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

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "score/report.hpp"

namespace score {
namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(std::optional<double> v) { return v ? fmt::format("{:.6f}", *v) : ""; }

std::string md_number(const MetricMean& m) {
  return m.pages > 0 ? fmt::format("{:.3f}", m.mean) : "n/a";
}

std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out;
}

std::string render_json(const AggregateReport& a, std::span<const PageReport> pages) {
  nlohmann::ordered_json j;
  j["config"] = to_json(a.config);
  nlohmann::ordered_json agg = to_json(a);
  agg.erase("config");
  agg.erase("notices");
  j["aggregate"] = std::move(agg);
  j["notices"] = a.notices;
  auto list = nlohmann::ordered_json::array();
  for (const PageReport& p : pages) list.push_back(to_json(p));
  j["pages"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string render_csv(const AggregateReport& a, std::span<const PageReport> pages) {
  std::string out =
      "Page,Adj. NED,NED,Diff,T. Added,T. Found,CER,WER,Content Acc.,Index Acc.,"
      "Detection F1,TEDS,Consistency Level,Notices\n";
  for (const PageReport& p : pages) {
    const FidelityScores& f = p.fidelity;
    std::optional<double> content, index, det, teds_v;
    if (p.table) {
      content = p.table->content_acc;
      index = p.table->index_acc;
      det = p.table->detection.f_beta;
      teds_v = p.table->teds;
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(p.page_id),
                       csv_number(f.adjusted_ned), csv_number(f.ned),
                       is_diff_page(p, a.config.diff_epsilon) ? 1 : 0, csv_number(f.tokens_added),
                       csv_number(f.tokens_found), csv_number(f.cer), csv_number(f.wer),
                       csv_number(content), csv_number(index), csv_number(det),
                       csv_number(teds_v), csv_number(p.consistency),
                       csv_field(fmt::format("{}", fmt::join(p.notices, "; "))));
  }
  return out;
}

std::string render_markdown(const AggregateReport& a, std::span<const PageReport> pages) {
  std::string out = "# Evaluation summary\n\n";
  out += fmt::format("Pages: {}\n\n", a.page_count);

  out += "## Content fidelity\n\n";
  out += "| Adj. NED | NED | Diff | Avg. | T. Added | T. Found |\n";
  out += "|---|---|---|---|---|---|\n";
  out += fmt::format("| {} | {} | {}/{} | {} | {} | {} |\n\n", md_number(a.adjusted_ned),
                     md_number(a.ned), a.diff_count, a.page_count,
                     a.diff_avg ? fmt::format("{:.3f}", *a.diff_avg) : "n/a",
                     md_number(a.tokens_added), md_number(a.tokens_found));

  out += "## Tables\n\n";
  out += "| Content Acc. | Index Acc. | Detection F1 | TEDS | TP | FP | FN |\n";
  out += "|---|---|---|---|---|---|---|\n";
  out += fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n\n", md_number(a.content_acc),
                     md_number(a.index_acc), md_number(a.detection_f1), md_number(a.teds),
                     a.detection_tp, a.detection_fp, a.detection_fn);

  out += "## Hierarchy\n\n";
  out += "| Consistency Level | Dataset Consistency |\n";
  out += "|---|---|\n";
  out += fmt::format("| {} | {:.3f} |\n\n", md_number(a.consistency), a.dataset_consistency);

  out += "## Configuration\n\n";
  const nlohmann::ordered_json config = to_json(a.config);
  for (const auto& [key, value] : config.items()) {
    out += fmt::format("- {}: {}\n", key, value.is_string() ? value.get<std::string>() : value.dump());
  }

  std::size_t page_notices = 0;
  for (const PageReport& p : pages) page_notices += p.notices.size();
  if (!a.notices.empty() || page_notices > 0) {
    out += "\n## Notices\n\n";
    for (const std::string& n : a.notices) out += fmt::format("- {}\n", md_cell(n));
    for (const PageReport& p : pages) {
      for (const std::string& n : p.notices) {
        out += fmt::format("- {}: {}\n", md_cell(p.page_id), md_cell(n));
      }
    }
  }
  return out;
}

}  // namespace

std::string render(const AggregateReport& aggregate, std::span<const PageReport> pages,
                   OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return render_json(aggregate, pages);
    case OutputFormat::Csv: return render_csv(aggregate, pages);
    case OutputFormat::Markdown: return render_markdown(aggregate, pages);
  }
  return {};
}

std::string_view output_file_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return "report.json";
    case OutputFormat::Csv: return "pages.csv";
    case OutputFormat::Markdown: return "summary.md";
  }
  return "report.json";
}

}  // namespace score
