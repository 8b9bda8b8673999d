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

#include "score/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "score/error.hpp"
#include "score/ingest.hpp"
#include "score/report.hpp"

namespace score {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitEmpty = 2;

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path.string() + "'");
  f << bytes;
  if (!f) throw Error(ErrorCode::InvalidConfig, "failed writing '" + path.string() + "'");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scores document parsing output against ground truth.", "score-eval"};

  std::string gt_dir;
  std::string pred_dir;
  std::string config_path;
  std::string out_dir;
  std::optional<std::string> formats;
  std::optional<int> shift_n;
  std::optional<double> tau;
  std::optional<double> beta;
  std::optional<double> diff_epsilon;
  std::optional<double> sim_threshold;
  std::optional<double> index_gate;
  std::optional<std::string> category_map;
  int jobs = 1;
  bool elements_only = false;

  app.add_option("--gt", gt_dir, "ground-truth directory of <page>.json files")->required();
  app.add_option("--pred", pred_dir, "prediction directory of <page>.json files")->required();
  app.add_option("--config", config_path, "key = value run configuration file");
  app.add_option("--out", out_dir, "write report.json, pages.csv and summary.md here");
  app.add_option("--format", formats, "comma-separated subset of json,csv,markdown");
  app.add_option("--shift-n", shift_n, "maximum cell shift searched per axis");
  app.add_option("--tau", tau, "minimum table similarity for a detection match");
  app.add_option("--beta", beta, "F-measure beta for table detection");
  app.add_option("--diff-epsilon", diff_epsilon, "adjusted minus raw NED counted as a Diff page");
  app.add_option("--sim-threshold", sim_threshold, "minimum NED for element matching");
  app.add_option("--index-gate", index_gate, "minimum cell NED for index accuracy");
  app.add_option("--category-map", category_map, "raw label to category map file");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--no-html", elements_only, "treat string texts literally, never as HTML tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (formats) apply_setting(cfg, "formats", *formats);
    if (shift_n) cfg.shift_n = *shift_n;
    if (tau) cfg.det_tau = *tau;
    if (beta) cfg.det_beta = *beta;
    if (diff_epsilon) cfg.diff_epsilon = *diff_epsilon;
    if (sim_threshold) cfg.sim_threshold = *sim_threshold;
    if (index_gate) cfg.index_gate = *index_gate;
    if (category_map) cfg.category_map_path = *category_map;
    cfg.validate();

    const CategoryMap map = cfg.category_map_path.empty()
                                ? CategoryMap::builtin()
                                : CategoryMap::load(cfg.category_map_path);

    PairingResult paired = pair_pages(gt_dir, pred_dir,
                                      elements_only ? FormatHint::ElementsJson : FormatHint::Auto);
    for (const std::string& n : paired.notices) err << "notice: " << n << '\n';

    const std::vector<PageReport> pages = evaluate_pages(paired.pairs, cfg, map, jobs);
    AggregateReport agg = aggregate(pages, cfg);
    agg.notices = std::move(paired.notices);

    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      for (OutputFormat f : cfg.formats) {
        write_file(std::filesystem::path(out_dir) / output_file_name(f), render(agg, pages, f));
      }
    } else {
      for (OutputFormat f : cfg.formats) out << render(agg, pages, f);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "score-eval: " << e.what() << '\n';
    return e.code() == ErrorCode::EmptyDataset ? kExitEmpty : kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "score-eval: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace score
