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

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "score/error.hpp"
#include "score/report.hpp"

namespace score {
namespace {

struct SideTables {
  std::vector<NormalizedTable> tables;
  std::vector<std::size_t> element_index;
};

SideTables collect_tables(const DocumentPage& page, const CategoryMap& map,
                          std::string_view side, std::vector<std::string>& notices) {
  SideTables out;
  for (std::size_t i = 0; i < page.elements.size(); ++i) {
    const Element& e = page.elements[i];
    const bool is_table = map_category(e.raw_label, map) == FunctionalCategory::Table;
    if (is_table) {
      if (e.table) {
        out.tables.push_back(*e.table);
      } else {
        notices.push_back(fmt::format(
            "{} element {} ('{}') has no cell structure; scored as a single-cell table", side, i,
            e.raw_label));
        std::vector<TableCell> cell{TableCell{0, 0, 1, 1, unicode::collapse_whitespace(e.text)}};
        out.tables.emplace_back(std::move(cell));
      }
      out.element_index.push_back(i);
    } else if (e.table) {
      notices.push_back(fmt::format(
          "{} element {} ('{}') carries cells but is not a table; excluded from table metrics",
          side, i, e.raw_label));
    }
  }
  return out;
}

std::optional<TableScores> score_tables(const PagePair& pair, const RunConfig& cfg,
                                        const CategoryMap& map,
                                        std::vector<std::string>& notices) {
  SideTables gt = collect_tables(pair.gt, map, "ground truth", notices);
  SideTables pred = collect_tables(pair.pred, map, "prediction", notices);
  if (gt.tables.empty() && pred.tables.empty()) return std::nullopt;

  TableScores scores;
  scores.gt_tables = gt.tables.size();
  scores.pred_tables = pred.tables.size();
  scores.detection =
      match_tables(pred.tables, gt.tables, cfg.det_tau, cfg.det_beta, cfg.tokenizer);

  if (gt.tables.empty()) {
    notices.push_back("no ground-truth table: cell accuracy and TEDS skipped");
    return scores;
  }

  double content_sum = 0.0;
  double index_sum = 0.0;
  double teds_sum = 0.0;
  for (const TablePair& tp : scores.detection.pairs) {
    const NormalizedTable& p = pred.tables[tp.pred];
    const NormalizedTable& g = gt.tables[tp.gt];
    TablePairScore s;
    s.gt = tp.gt;
    s.pred = tp.pred;
    s.similarity = tp.similarity;
    s.accuracy = content_index_accuracy(p, g, cfg.shift_n, cfg.index_gate);
    s.teds = teds(build_table_tree(p), build_table_tree(g));
    content_sum += s.accuracy.content_acc;
    index_sum += s.accuracy.index_acc;
    teds_sum += s.teds;
    scores.pairs.push_back(s);
  }
  const double n = static_cast<double>(gt.tables.size());
  scores.content_acc = content_sum / n;
  scores.index_acc = index_sum / n;
  scores.teds = teds_sum / n;
  return scores;
}

void add_mean(MetricMean& m, double value) {
  m.mean += value;
  ++m.pages;
}

void finish_mean(MetricMean& m) {
  if (m.pages > 0) m.mean /= static_cast<double>(m.pages);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json to_json(const MetricMean& m) {
  nlohmann::ordered_json j;
  j["mean"] = m.pages > 0 ? nlohmann::ordered_json(m.mean) : nlohmann::ordered_json(nullptr);
  j["pages"] = m.pages;
  return j;
}

nlohmann::ordered_json to_json(const ConfusionMatrix& c) {
  nlohmann::ordered_json j;
  auto labels = nlohmann::ordered_json::array();
  for (FunctionalCategory cat : kAllCategories) labels.push_back(to_string(cat));
  labels.push_back("NOMATCH");
  j["labels"] = labels;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < ConfusionMatrix::kSize; ++t) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < ConfusionMatrix::kSize; ++p) row.push_back(c.at(t, p));
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  return j;
}

nlohmann::ordered_json to_json(const DetectionResult& d) {
  nlohmann::ordered_json j;
  j["tp"] = d.true_positives;
  j["fp"] = d.false_positives;
  j["fn"] = d.false_negatives;
  j["precision"] = d.precision;
  j["recall"] = d.recall;
  j["f_beta"] = d.f_beta;
  return j;
}

}  // namespace

PageReport evaluate_page(const PagePair& pair, const RunConfig& cfg, const CategoryMap& map) {
  PageReport r;
  r.page_id = pair.page_id;
  for (const std::string& n : pair.notices) r.notices.push_back(n);
  for (const std::string& n : pair.gt.notices) r.notices.push_back("ground truth: " + n);
  for (const std::string& n : pair.pred.notices) r.notices.push_back("prediction: " + n);

  r.fidelity = fidelity(pair.pred, pair.gt, map, cfg.tokenizer);
  if (!r.fidelity.cer) r.notices.push_back("ground-truth page has no text: CER/WER skipped");

  r.table = score_tables(pair, cfg, map, r.notices);

  const ElementMatching matching = match_elements(pair.gt, pair.pred, cfg.sim_threshold);
  r.confusion = build_confusion(matching, pair.gt, pair.pred, map);
  r.consistency = consistency_score(r.confusion, cfg.consistency_averaging);
  r.gt_elements = pair.gt.elements.size();
  r.pred_elements = pair.pred.elements.size();
  r.matched_elements = matching.size();
  return r;
}

std::vector<PageReport> evaluate_pages(std::span<const PagePair> pairs, const RunConfig& cfg,
                                       const CategoryMap& map, int jobs) {
  std::vector<PageReport> reports(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        reports[i] = evaluate_page(pairs[i], cfg, map);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), pairs.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

bool is_diff_page(const PageReport& r, double diff_epsilon) {
  return r.fidelity.adjusted_ned - r.fidelity.ned >= diff_epsilon;
}

AggregateReport aggregate(std::span<const PageReport> reports, const RunConfig& cfg) {
  if (reports.empty()) throw Error(ErrorCode::EmptyDataset, "no pages to aggregate");

  // Fixed summation order keeps the means independent of input order.
  std::vector<const PageReport*> order;
  order.reserve(reports.size());
  for (const PageReport& r : reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const PageReport* a, const PageReport* b) { return a->page_id < b->page_id; });

  AggregateReport a;
  a.page_count = reports.size();
  a.config = cfg;
  double diff_sum = 0.0;
  for (const PageReport* r : order) {
    const FidelityScores& f = r->fidelity;
    add_mean(a.adjusted_ned, f.adjusted_ned);
    add_mean(a.ned, f.ned);
    add_mean(a.tokens_added, f.tokens_added);
    add_mean(a.tokens_found, f.tokens_found);
    if (r->table) {
      const TableScores& t = *r->table;
      add_mean(a.detection_f1, t.detection.f_beta);
      if (t.content_acc) add_mean(a.content_acc, *t.content_acc);
      if (t.index_acc) add_mean(a.index_acc, *t.index_acc);
      if (t.teds) add_mean(a.teds, *t.teds);
      a.detection_tp += t.detection.true_positives;
      a.detection_fp += t.detection.false_positives;
      a.detection_fn += t.detection.false_negatives;
    }
    add_mean(a.consistency, r->consistency);
    a.confusion += r->confusion;
    if (is_diff_page(*r, cfg.diff_epsilon)) {
      ++a.diff_count;
      diff_sum += f.adjusted_ned - f.ned;
    }
  }
  for (MetricMean* m : {&a.adjusted_ned, &a.ned, &a.tokens_added, &a.tokens_found, &a.content_acc,
                        &a.index_acc, &a.detection_f1, &a.teds, &a.consistency}) {
    finish_mean(*m);
  }
  if (a.diff_count > 0) a.diff_avg = diff_sum / static_cast<double>(a.diff_count);
  a.dataset_consistency = consistency_score(a.confusion, cfg.consistency_averaging);
  return a;
}

nlohmann::ordered_json to_json(const PageReport& r) {
  nlohmann::ordered_json j;
  j["page_id"] = r.page_id;

  const FidelityScores& f = r.fidelity;
  nlohmann::ordered_json fj;
  fj["ned"] = f.ned;
  fj["adjusted_ned"] = f.adjusted_ned;
  fj["tokens_found"] = f.tokens_found;
  fj["tokens_added"] = f.tokens_added;
  fj["cer"] = optional_json(f.cer);
  fj["wer"] = optional_json(f.wer);
  fj["matched_tokens"] = f.matched_tokens;
  fj["missed_tokens"] = f.missed_tokens;
  fj["spurious_tokens"] = f.spurious_tokens;
  fj["reference_tokens"] = f.reference_tokens;
  fj["output_tokens"] = f.output_tokens;
  j["fidelity"] = std::move(fj);

  if (r.table) {
    const TableScores& t = *r.table;
    nlohmann::ordered_json tj;
    tj["gt_tables"] = t.gt_tables;
    tj["pred_tables"] = t.pred_tables;
    tj["detection"] = to_json(t.detection);
    tj["content_acc"] = optional_json(t.content_acc);
    tj["index_acc"] = optional_json(t.index_acc);
    tj["teds"] = optional_json(t.teds);
    auto pairs = nlohmann::ordered_json::array();
    for (const TablePairScore& p : t.pairs) {
      nlohmann::ordered_json pj;
      pj["gt"] = p.gt;
      pj["pred"] = p.pred;
      pj["similarity"] = p.similarity;
      pj["content_acc"] = p.accuracy.content_acc;
      pj["index_acc"] = p.accuracy.index_acc;
      pj["best_shift"] = {p.accuracy.best_shift.row, p.accuracy.best_shift.col};
      pj["teds"] = p.teds;
      pairs.push_back(std::move(pj));
    }
    tj["pairs"] = std::move(pairs);
    j["table"] = std::move(tj);
  } else {
    j["table"] = nullptr;
  }

  j["consistency"] = r.consistency;
  j["gt_elements"] = r.gt_elements;
  j["pred_elements"] = r.pred_elements;
  j["matched_elements"] = r.matched_elements;
  j["confusion"] = to_json(r.confusion);
  j["notices"] = r.notices;
  return j;
}

nlohmann::ordered_json to_json(const AggregateReport& a) {
  nlohmann::ordered_json j;
  j["page_count"] = a.page_count;
  nlohmann::ordered_json m;
  m["adjusted_ned"] = to_json(a.adjusted_ned);
  m["ned"] = to_json(a.ned);
  m["tokens_added"] = to_json(a.tokens_added);
  m["tokens_found"] = to_json(a.tokens_found);
  m["content_acc"] = to_json(a.content_acc);
  m["index_acc"] = to_json(a.index_acc);
  m["detection_f1"] = to_json(a.detection_f1);
  m["teds"] = to_json(a.teds);
  m["consistency"] = to_json(a.consistency);
  j["means"] = std::move(m);
  j["diff_count"] = a.diff_count;
  j["diff_avg"] = optional_json(a.diff_avg);
  j["detection"] = {{"tp", a.detection_tp}, {"fp", a.detection_fp}, {"fn", a.detection_fn}};
  j["dataset_consistency"] = a.dataset_consistency;
  j["confusion"] = to_json(a.confusion);
  j["config"] = to_json(a.config);
  j["notices"] = a.notices;
  return j;
}

}  // namespace score
