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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "score/error.hpp"
#include "score/report.hpp"
#include "score/unicode.hpp"

namespace score {
namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, message);
}

std::string lowered(std::string_view s) {
  std::string out = unicode::trim(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = lowered(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  invalid(fmt::format("{}: expected a boolean, got '{}'", key, value));
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string v = unicode::trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
    invalid(fmt::format("{}: expected a number, got '{}'", key, value));
  }
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  const std::string v = unicode::trim(value);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    invalid(fmt::format("{}: expected an integer, got '{}'", key, value));
  }
  return out;
}

void require(bool ok, std::string_view what) {
  if (!ok) invalid(std::string(what));
}

std::string_view to_string(unicode::Normalization n) {
  switch (n) {
    case unicode::Normalization::None: return "none";
    case unicode::Normalization::NFC: return "NFC";
    case unicode::Normalization::NFKC: return "NFKC";
  }
  return "none";
}

}  // namespace

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Markdown: return "markdown";
  }
  return "json";
}

std::vector<OutputFormat> parse_formats(std::string_view list) {
  std::vector<OutputFormat> formats;
  std::string item;
  std::istringstream in{std::string(list)};
  while (std::getline(in, item, ',')) {
    const std::string name = lowered(item);
    OutputFormat f;
    if (name == "json") {
      f = OutputFormat::Json;
    } else if (name == "csv") {
      f = OutputFormat::Csv;
    } else if (name == "markdown" || name == "md") {
      f = OutputFormat::Markdown;
    } else {
      invalid(fmt::format("format: unknown output format '{}'", item));
    }
    if (std::find(formats.begin(), formats.end(), f) == formats.end()) formats.push_back(f);
  }
  if (formats.empty()) invalid("format: at least one output format is required");
  return formats;
}

void RunConfig::validate() const {
  require(shift_n >= 0 && shift_n <= 50, "shift_n must lie in [0, 50]");
  require(det_tau > 0.0 && det_tau <= 1.0, "det_tau must lie in (0, 1]");
  require(det_beta > 0.0 && std::isfinite(det_beta), "det_beta must be positive");
  require(sim_threshold >= 0.0 && sim_threshold <= 1.0, "sim_threshold must lie in [0, 1]");
  require(diff_epsilon >= 0.0 && diff_epsilon <= 1.0, "diff_epsilon must lie in [0, 1]");
  require(index_gate >= 0.0 && index_gate <= 1.0, "index_gate must lie in [0, 1]");
  require(!formats.empty(), "at least one output format is required");
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = lowered(raw_key);
  if (key == "case_fold") {
    cfg.tokenizer.case_fold = parse_bool(key, value);
  } else if (key == "strip_punct") {
    cfg.tokenizer.strip_punct = parse_bool(key, value);
  } else if (key == "unicode_normalize") {
    const std::string v = lowered(value);
    if (v == "none") {
      cfg.tokenizer.unicode_normalize = unicode::Normalization::None;
    } else if (v == "nfc") {
      cfg.tokenizer.unicode_normalize = unicode::Normalization::NFC;
    } else if (v == "nfkc") {
      cfg.tokenizer.unicode_normalize = unicode::Normalization::NFKC;
    } else {
      invalid(fmt::format("unicode_normalize: expected none, NFC or NFKC, got '{}'", value));
    }
  } else if (key == "shift_n") {
    cfg.shift_n = parse_int(key, value);
  } else if (key == "det_tau") {
    cfg.det_tau = parse_double(key, value);
  } else if (key == "det_beta") {
    cfg.det_beta = parse_double(key, value);
  } else if (key == "sim_threshold") {
    cfg.sim_threshold = parse_double(key, value);
  } else if (key == "diff_epsilon") {
    cfg.diff_epsilon = parse_double(key, value);
  } else if (key == "index_gate") {
    cfg.index_gate = parse_double(key, value);
  } else if (key == "consistency_averaging") {
    const std::string v = lowered(value);
    if (v == "macro") {
      cfg.consistency_averaging = F1Averaging::Macro;
    } else if (v == "micro") {
      cfg.consistency_averaging = F1Averaging::Micro;
    } else {
      invalid(fmt::format("consistency_averaging: expected macro or micro, got '{}'", value));
    }
  } else if (key == "category_map") {
    cfg.category_map_path = unicode::trim(value);
  } else if (key == "formats" || key == "format") {
    cfg.formats = parse_formats(value);
  } else {
    invalid(fmt::format("unknown configuration key '{}'", raw_key));
  }
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (unicode::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      invalid(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    try {
      apply_setting(base, std::string_view(line).substr(0, eq),
                    std::string_view(line).substr(eq + 1));
    } catch (const Error& e) {
      invalid(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), std::move(base));
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["case_fold"] = cfg.tokenizer.case_fold;
  j["strip_punct"] = cfg.tokenizer.strip_punct;
  j["unicode_normalize"] = to_string(cfg.tokenizer.unicode_normalize);
  j["shift_n"] = cfg.shift_n;
  j["det_tau"] = cfg.det_tau;
  j["det_beta"] = cfg.det_beta;
  j["sim_threshold"] = cfg.sim_threshold;
  j["diff_epsilon"] = cfg.diff_epsilon;
  j["index_gate"] = cfg.index_gate;
  j["consistency_averaging"] = cfg.consistency_averaging == F1Averaging::Macro ? "macro" : "micro";
  j["category_map"] = cfg.category_map_path.empty() ? "builtin" : cfg.category_map_path;
  auto formats = nlohmann::ordered_json::array();
  for (OutputFormat f : cfg.formats) formats.push_back(to_string(f));
  j["formats"] = std::move(formats);
  return j;
}

}  // namespace score
