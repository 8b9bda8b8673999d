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

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "score/error.hpp"
#include "score/ingest.hpp"
#include "score/report.hpp"
#include "support/generators.hpp"

using namespace score;
using doctest::Approx;

namespace {

PagePair pair_from_json(const std::string& id, const std::string& gt, const std::string& pred) {
  return PagePair{id, parse_document(gt, FormatHint::Auto, id), parse_document(pred, FormatHint::Auto, id), {}};
}

std::string read_fixture(const std::string& rel) {
  std::ifstream f(std::string(SCORE_FIXTURE_DIR) + "/" + rel, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

PageReport with_fidelity(const std::string& id, double ned, double adjusted) {
  PageReport r;
  r.page_id = id;
  r.fidelity.ned = ned;
  r.fidelity.adjusted_ned = adjusted;
  return r;
}

const std::string kPage = R"([
  {"type":"Title","text":"Quarterly report"},
  {"type":"Text","text":"Revenue grew in the north region"},
  {"type":"Table","text":[{"x":0,"y":0,"content":"Q1"},{"x":1,"y":0,"content":"$100K"},
                          {"x":0,"y":1,"content":"Q2"},{"x":1,"y":1,"content":"$200K"}]}
])";

}  // namespace

TEST_CASE("identical pages score perfectly") {
  const PageReport r = evaluate_page(pair_from_json("p", kPage, kPage), RunConfig{}, CategoryMap::builtin());
  CHECK(r.fidelity.ned == 1.0);
  CHECK(r.fidelity.adjusted_ned == 1.0);
  CHECK(r.fidelity.tokens_found == 1.0);
  CHECK(r.fidelity.tokens_added == 0.0);
  REQUIRE(r.table.has_value());
  CHECK(r.table->detection.f_beta == 1.0);
  CHECK(r.table->content_acc == 1.0);
  CHECK(r.table->index_acc == 1.0);
  CHECK(r.table->teds == 1.0);
  CHECK(r.consistency == 1.0);
  CHECK(r.matched_elements == 3);
  CHECK(r.notices.empty());
}

TEST_CASE("prediction without tables") {
  const std::string pred = R"([{"type":"Title","text":"Quarterly report"},
                               {"type":"Text","text":"Revenue grew in the north region"}])";
  const PageReport r = evaluate_page(pair_from_json("p", kPage, pred), RunConfig{}, CategoryMap::builtin());
  REQUIRE(r.table.has_value());
  CHECK(r.table->detection.f_beta == 0.0);
  CHECK(r.table->content_acc == 0.0);
  CHECK(r.table->teds == 0.0);
  CHECK(r.fidelity.ned < 1.0);
  CHECK(r.fidelity.tokens_found < 1.0);
}

TEST_CASE("table block presence") {
  const std::string text_only = R"([{"type":"Text","text":"hello"}])";
  const CategoryMap& map = CategoryMap::builtin();
  CHECK_FALSE(evaluate_page(pair_from_json("p", text_only, text_only), RunConfig{}, map).table);

  const PageReport pred_only = evaluate_page(pair_from_json("p", text_only, kPage), RunConfig{}, map);
  REQUIRE(pred_only.table.has_value());
  CHECK(pred_only.table->detection.false_positives == 1);
  CHECK_FALSE(pred_only.table->content_acc.has_value());
  CHECK_FALSE(pred_only.table->teds.has_value());
  CHECK(pred_only.notices.size() == 1);
}

TEST_CASE("unmatched GT tables count as zero") {
  const std::string two = R"([
    {"type":"Table","text":[{"x":0,"y":0,"content":"alpha beta"}]},
    {"type":"Table","text":[{"x":0,"y":0,"content":"gamma delta"}]}])";
  const std::string one = R"([{"type":"Table","text":[{"x":0,"y":0,"content":"alpha beta"}]}])";
  const PageReport r = evaluate_page(pair_from_json("p", two, one), RunConfig{}, CategoryMap::builtin());
  REQUIRE(r.table.has_value());
  CHECK(r.table->gt_tables == 2);
  CHECK(r.table->detection.true_positives == 1);
  CHECK(*r.table->teds == 0.5);
  CHECK(*r.table->content_acc == 0.5);
  CHECK(*r.table->index_acc == 0.5);
}

TEST_CASE("degraded tables produce notices") {
  const CategoryMap& map = CategoryMap::builtin();
  const std::string plain_table = R"([{"type":"Table","text":"Q1 $100K Q2 $200K"}])";
  const PageReport r = evaluate_page(pair_from_json("p", kPage, plain_table), RunConfig{}, map);
  REQUIRE(r.table.has_value());
  CHECK(r.table->pred_tables == 1);
  CHECK(r.notices.size() == 1);

  const std::string cells_on_text = R"([{"type":"Text","text":[{"x":0,"y":0,"content":"a"}]}])";
  const PageReport t = evaluate_page(pair_from_json("p", cells_on_text, cells_on_text), RunConfig{}, map);
  CHECK_FALSE(t.table.has_value());
  CHECK(t.notices.size() == 2);

  const std::string blank = "[]";
  const PageReport b = evaluate_page(pair_from_json("p", blank, kPage), RunConfig{}, map);
  CHECK_FALSE(b.fidelity.cer.has_value());
  CHECK(std::any_of(b.notices.begin(), b.notices.end(),
                    [](const std::string& n) { return n.find("CER") != std::string::npos; }));
}

TEST_CASE("reading path fixture page") {
  const PageReport r = evaluate_page(
      pair_from_json("wikimedia", read_fixture("reading_paths/gt/wikimedia.json"),
                     read_fixture("reading_paths/pred/wikimedia.json")),
      RunConfig{}, CategoryMap::builtin());
  CHECK(r.fidelity.ned >= 0.26);
  CHECK(r.fidelity.ned <= 0.46);
  CHECK(r.fidelity.adjusted_ned > r.fidelity.ned + 0.3);
  REQUIRE(r.table.has_value());
  CHECK(r.table->detection.true_positives == 1);
}

TEST_CASE("aggregate examples") {
  RunConfig cfg;
  SUBCASE("one perfect page") {
    const std::vector<PageReport> pages{evaluate_page(pair_from_json("p", kPage, kPage), cfg, CategoryMap::builtin())};
    const AggregateReport a = aggregate(pages, cfg);
    CHECK(a.page_count == 1);
    CHECK(a.adjusted_ned.mean == 1.0);
    CHECK(a.ned.mean == 1.0);
    CHECK(a.tokens_found.mean == 1.0);
    CHECK(a.teds.mean == 1.0);
    CHECK(a.consistency.mean == 1.0);
    CHECK(a.diff_count == 0);
    CHECK_FALSE(a.diff_avg.has_value());
  }
  SUBCASE("diff pages") {
    const std::vector<PageReport> pages{with_fidelity("a", 0.5, 0.5), with_fidelity("b", 0.4, 0.6)};
    const AggregateReport a = aggregate(pages, cfg);
    CHECK(a.diff_count == 1);
    REQUIRE(a.diff_avg.has_value());
    CHECK(*a.diff_avg == Approx(0.2));
    CHECK(a.ned.mean == Approx(0.45));
    CHECK(a.teds.pages == 0);
  }
  SUBCASE("empty") {
    try {
      aggregate({}, cfg);
      FAIL("expected EmptyDataset");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyDataset);
    }
  }
}

TEST_CASE("aggregate properties") {
  gen::Rng rng(51);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<PageReport> pages;
    const int n = gen::uniform(rng, 1, 12);
    for (int i = 0; i < n; ++i) {
      const double ned = unit(rng);
      pages.push_back(with_fidelity("p" + std::to_string(i), ned, ned + (1.0 - ned) * unit(rng) * 0.5));
    }
    RunConfig cfg;
    const AggregateReport base = aggregate(pages, cfg);
    std::shuffle(pages.begin(), pages.end(), rng);
    const AggregateReport shuffled = aggregate(pages, cfg);
    CHECK(to_json(base).dump() == to_json(shuffled).dump());

    std::size_t previous = pages.size() + 1;
    for (double eps : {0.0, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0}) {
      cfg.diff_epsilon = eps;
      const AggregateReport a = aggregate(pages, cfg);
      CHECK(a.diff_count <= a.page_count);
      CHECK(a.diff_count <= previous);
      CHECK(a.diff_avg.has_value() == (a.diff_count > 0));
      previous = a.diff_count;
    }
  }
}

TEST_CASE("render formats") {
  RunConfig cfg;
  const std::vector<PageReport> pages{
      evaluate_page(pair_from_json("page,1", kPage, kPage), cfg, CategoryMap::builtin())};
  const AggregateReport a = aggregate(pages, cfg);

  const std::string csv = render(a, pages, OutputFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.rfind("Page,Adj. NED,NED,Diff,T. Added,T. Found,CER,WER,Content Acc.,Index Acc.,"
                  "Detection F1,TEDS,Consistency Level,Notices\n", 0) == 0);
  CHECK(csv.find("\"page,1\",1.000000,1.000000,0,") != std::string::npos);

  const std::string md = render(a, pages, OutputFormat::Markdown);
  for (const char* column : {"Adj. NED", "NED", "T. Added", "T. Found", "Diff", "Avg.",
                             "Content Acc.", "Index Acc.", "Detection F1", "TEDS",
                             "Consistency Level"}) {
    CHECK(md.find(column) != std::string::npos);
  }

  const std::string json = render(a, pages, OutputFormat::Json);
  const auto parsed = nlohmann::ordered_json::parse(json);
  CHECK(parsed["config"] == to_json(cfg));
  CHECK(parsed["pages"].size() == 1);
  CHECK(parsed["pages"][0] == to_json(pages[0]));
  CHECK(parsed["aggregate"]["page_count"] == 1);

  CHECK(output_file_name(OutputFormat::Json) == "report.json");
  CHECK(output_file_name(OutputFormat::Csv) == "pages.csv");
  CHECK(output_file_name(OutputFormat::Markdown) == "summary.md");
}

TEST_CASE("json numbers round-trip exactly") {
  gen::Rng rng(52);
  std::vector<PagePair> pairs;
  for (int i = 0; i < 20; ++i) {
    auto [gt, pred] = gen::random_page_pair(rng);
    pairs.push_back(pair_from_json("p" + std::to_string(i), gt.dump(), pred.dump()));
  }
  RunConfig cfg;
  const auto pages = evaluate_pages(pairs, cfg, CategoryMap::builtin());
  const AggregateReport a = aggregate(pages, cfg);
  const auto parsed = nlohmann::ordered_json::parse(render(a, pages, OutputFormat::Json));
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const auto& f = parsed["pages"][i]["fidelity"];
    CHECK(f["ned"].get<double>() == pages[i].fidelity.ned);
    CHECK(f["adjusted_ned"].get<double>() == pages[i].fidelity.adjusted_ned);
    CHECK(f["tokens_found"].get<double>() == pages[i].fidelity.tokens_found);
    CHECK(f["tokens_added"].get<double>() == pages[i].fidelity.tokens_added);
    if (pages[i].table && pages[i].table->teds) {
      CHECK(parsed["pages"][i]["table"]["teds"].get<double>() == *pages[i].table->teds);
    }
    CHECK(parsed["pages"][i]["consistency"].get<double>() == pages[i].consistency);
  }
  CHECK(parsed["aggregate"]["means"]["ned"]["mean"].get<double>() == a.ned.mean);
  CHECK(parsed["aggregate"]["means"]["adjusted_ned"]["mean"].get<double>() == a.adjusted_ned.mean);
}

TEST_CASE("parallel evaluation is deterministic") {
  gen::Rng rng(53);
  std::vector<PagePair> pairs;
  for (int i = 0; i < 40; ++i) {
    auto [gt, pred] = gen::random_page_pair(rng);
    pairs.push_back(pair_from_json("p" + std::to_string(i), gt.dump(), pred.dump()));
  }
  RunConfig cfg;
  const auto serial = evaluate_pages(pairs, cfg, CategoryMap::builtin(), 1);
  const auto parallel = evaluate_pages(pairs, cfg, CategoryMap::builtin(), 4);
  CHECK(render(aggregate(serial, cfg), serial, OutputFormat::Json) ==
        render(aggregate(parallel, cfg), parallel, OutputFormat::Json));
}

TEST_CASE("run config") {
  RunConfig defaults;
  CHECK_NOTHROW(defaults.validate());
  CHECK(defaults.shift_n == 2);
  CHECK(defaults.det_tau == 0.5);
  CHECK(defaults.det_beta == 1.0);
  CHECK(defaults.diff_epsilon == 0.01);

  const RunConfig cfg = parse_run_config(
      "# tuned run\n"
      "shift_n = 3\n"
      "det_tau = 0.7   # stricter\n"
      "det_beta=2\n"
      "case_fold = false\n"
      "strip_punct = yes\n"
      "unicode_normalize = NFKC\n"
      "consistency_averaging = micro\n"
      "formats = csv, markdown\n");
  CHECK(cfg.shift_n == 3);
  CHECK(cfg.det_tau == 0.7);
  CHECK(cfg.det_beta == 2.0);
  CHECK_FALSE(cfg.tokenizer.case_fold);
  CHECK(cfg.tokenizer.strip_punct);
  CHECK(cfg.tokenizer.unicode_normalize == unicode::Normalization::NFKC);
  CHECK(cfg.consistency_averaging == F1Averaging::Micro);
  CHECK(cfg.formats == std::vector<OutputFormat>{OutputFormat::Csv, OutputFormat::Markdown});

  const auto j = to_json(cfg);
  CHECK(j["shift_n"] == 3);
  CHECK(j["unicode_normalize"] == "NFKC");
  CHECK(j["formats"].size() == 2);

  for (const char* bad : {"unknown_key = 1", "shift_n = x", "det_tau = 0.5.5", "no equals",
                          "case_fold = maybe", "formats = pdf", "unicode_normalize = NFD"}) {
    CHECK_THROWS_AS(parse_run_config(bad), Error);
  }
  for (const char* out_of_range : {"det_tau = 0", "det_tau = 1.5", "shift_n = -1", "det_beta = 0",
                                   "sim_threshold = 2", "diff_epsilon = -0.1", "index_gate = 1.1"}) {
    CHECK_THROWS_AS(parse_run_config(out_of_range).validate(), Error);
  }
}
