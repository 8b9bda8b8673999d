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

// Lenient HTML handling for table payloads. Only enough of the HTML tree
// construction rules is modelled to recover cell boundaries from markup that
// generative parsers emit: unclosed <p>/<span>, stray text between cells,
// implicit rows and nested tables inside cells.

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "score/error.hpp"
#include "score/ingest.hpp"
#include "score/unicode.hpp"

namespace score {
namespace {

constexpr int kMaxSpan = 1000;

struct Token {
  enum class Kind { Start, End, Text };
  Kind kind = Kind::Text;
  std::string name;  // lower-cased tag name
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;  // decoded character data for Text tokens
};

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](char c) { return lower(c); });
  return out;
}

bool is_block(std::string_view tag) {
  static constexpr std::array<std::string_view, 44> kBlocks = {
      "address", "article", "aside",  "blockquote", "br",      "caption", "dd",
      "details", "dialog",  "div",    "dl",         "dt",      "fieldset", "figcaption",
      "figure",  "footer",  "form",   "h1",         "h2",      "h3",      "h4",
      "h5",      "h6",      "header", "hr",         "li",      "main",    "nav",
      "ol",      "p",       "pre",    "section",    "summary", "table",   "tbody",
      "td",      "tfoot",   "th",     "thead",      "tr",      "ul",      "option",
      "legend",  "center"};
  return std::find(kBlocks.begin(), kBlocks.end(), tag) != kBlocks.end();
}

void append_code_point(std::string& out, char32_t cp) {
  out += unicode::encode(std::u32string_view(&cp, 1));
}

std::string decode_entities(std::string_view raw) {
  static const std::map<std::string_view, char32_t> kNamed = {
      {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},      {"quot", U'"'},
      {"apos", U'\''},    {"nbsp", U'\u00A0'}, {"ndash", U'–'}, {"mdash", U'—'},
      {"hellip", U'…'}, {"lsquo", U'‘'}, {"rsquo", U'’'}, {"ldquo", U'“'},
      {"rdquo", U'”'}, {"copy", U'©'}, {"reg", U'®'}, {"trade", U'™'},
      {"euro", U'€'}, {"pound", U'£'}, {"yen", U'¥'}, {"cent", U'¢'},
      {"deg", U'°'}, {"times", U'×'}, {"divide", U'÷'}, {"middot", U'·'},
      {"bull", U'•'}, {"sect", U'§'}, {"para", U'¶'}, {"plusmn", U'±'},
      {"laquo", U'«'}, {"raquo", U'»'}, {"shy", U'\u00AD'}};

  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out += raw[i++];
      continue;
    }
    const std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += raw[i++];
      continue;
    }
    const std::string_view body = raw.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (body.size() >= 2 && body[0] == '#') {
      unsigned long value = 0;
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string_view digits = body.substr(hex ? 2 : 1);
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), value, hex ? 16 : 10);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty() &&
          value > 0 && value <= 0x10FFFF && !(value >= 0xD800 && value <= 0xDFFF)) {
        append_code_point(out, static_cast<char32_t>(value));
        decoded = true;
      }
    } else if (auto it = kNamed.find(body); it != kNamed.end()) {
      append_code_point(out, it->second);
      decoded = true;
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out += raw[i++];
    }
  }
  return out;
}

[[noreturn]] void malformed(std::size_t offset, std::string_view what) {
  throw Error(ErrorCode::MalformedInput,
              "HTML " + std::string(what) + " at byte " + std::to_string(offset));
}

std::vector<Token> tokenize(std::string_view html) {
  std::vector<Token> tokens;
  std::string pending_text;
  auto flush_text = [&] {
    if (pending_text.empty()) return;
    Token t;
    t.kind = Token::Kind::Text;
    t.text = decode_entities(pending_text);
    tokens.push_back(std::move(t));
    pending_text.clear();
  };

  std::size_t i = 0;
  const std::size_t n = html.size();
  while (i < n) {
    const char c = html[i];
    if (c != '<' || i + 1 >= n) {
      pending_text += c;
      ++i;
      continue;
    }
    const char next = html[i + 1];
    if (html.substr(i, 4) == "<!--") {
      const std::size_t end = html.find("-->", i + 4);
      if (end == std::string_view::npos) malformed(i, "unterminated comment");
      flush_text();
      i = end + 3;
      continue;
    }
    if (next == '!' || next == '?') {
      const std::size_t end = html.find('>', i);
      if (end == std::string_view::npos) malformed(i, "unterminated declaration");
      flush_text();
      i = end + 1;
      continue;
    }
    const bool closing = next == '/';
    const std::size_t name_start = i + (closing ? 2 : 1);
    if (name_start >= n || !is_ascii_alpha(html[name_start])) {
      pending_text += c;  // a bare '<' is character data
      ++i;
      continue;
    }
    flush_text();
    std::size_t j = name_start;
    while (j < n && !is_ascii_space(html[j]) && html[j] != '/' && html[j] != '>') ++j;
    Token tag;
    tag.kind = closing ? Token::Kind::End : Token::Kind::Start;
    tag.name = lower(html.substr(name_start, j - name_start));

    // Attributes: name, name=value, name="value", name='value'.
    bool closed = false;
    while (j < n) {
      while (j < n && (is_ascii_space(html[j]) || html[j] == '/')) ++j;
      if (j >= n) break;
      if (html[j] == '>') {
        closed = true;
        ++j;
        break;
      }
      const std::size_t attr_start = j;
      while (j < n && !is_ascii_space(html[j]) && html[j] != '=' && html[j] != '>' &&
             html[j] != '/')
        ++j;
      std::string attr_name = lower(html.substr(attr_start, j - attr_start));
      while (j < n && is_ascii_space(html[j])) ++j;
      std::string value;
      if (j < n && html[j] == '=') {
        ++j;
        while (j < n && is_ascii_space(html[j])) ++j;
        if (j < n && (html[j] == '"' || html[j] == '\'')) {
          const char quote = html[j];
          const std::size_t close = html.find(quote, j + 1);
          if (close == std::string_view::npos) malformed(attr_start, "unterminated attribute");
          value = decode_entities(html.substr(j + 1, close - j - 1));
          j = close + 1;
        } else {
          const std::size_t value_start = j;
          while (j < n && !is_ascii_space(html[j]) && html[j] != '>') ++j;
          value = decode_entities(html.substr(value_start, j - value_start));
        }
      }
      if (!attr_name.empty()) tag.attrs.emplace_back(std::move(attr_name), std::move(value));
    }
    if (!closed) malformed(i, "unterminated tag <" + tag.name);
    i = j;

    // Raw-text elements: their content never reaches the text stream.
    if (tag.kind == Token::Kind::Start && (tag.name == "script" || tag.name == "style")) {
      const std::string close_tag = "</" + tag.name;
      std::size_t k = i;
      while (k < n) {
        const std::size_t lt = html.find('<', k);
        if (lt == std::string_view::npos) {
          k = n;
          break;
        }
        if (lower(html.substr(lt, close_tag.size())) == close_tag) {
          const std::size_t gt = html.find('>', lt);
          k = gt == std::string_view::npos ? n : gt + 1;
          break;
        }
        k = lt + 1;
      }
      i = k;
      continue;
    }
    tokens.push_back(std::move(tag));
  }
  flush_text();
  return tokens;
}

const std::string* attribute(const Token& t, std::string_view name) {
  for (const auto& [k, v] : t.attrs) {
    if (k == name) return &v;
  }
  return nullptr;
}

int span_attribute(const Token& t, std::string_view name) {
  const std::string* value = attribute(t, name);
  if (value == nullptr) return 1;
  const std::string trimmed = unicode::trim(*value);
  int parsed = 1;
  const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), parsed);
  if (ec != std::errc() || ptr == trimmed.data() || parsed < 1) return 1;
  return std::min(parsed, kMaxSpan);
}

// Appends character data, inserting one space where a pending boundary
// separates two non-space characters.
class TextSink {
 public:
  void boundary() { pending_ = true; }

  void append(std::string_view text) {
    if (text.empty()) return;
    if (pending_ && !out_.empty()) {
      const std::u32string head = unicode::decode(text.substr(0, std::min<std::size_t>(4, text.size())));
      const bool ends_space = last_was_space_;
      const bool starts_space = !head.empty() && unicode::is_space(head.front());
      if (!ends_space && !starts_space) out_ += ' ';
    }
    pending_ = false;
    out_ += text;
    const std::u32string tail = unicode::decode(text.substr(text.size() >= 4 ? text.size() - 4 : 0));
    last_was_space_ = !tail.empty() && unicode::is_space(tail.back());
  }

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  bool pending_ = false;
  bool last_was_space_ = false;
};

void emit_inline(const Token& t, TextSink& sink) {
  if (t.kind == Token::Kind::Text) {
    sink.append(t.text);
    return;
  }
  if (t.name == "img" && t.kind == Token::Kind::Start) {
    if (const std::string* alt = attribute(t, "alt"); alt != nullptr && !alt->empty()) {
      sink.boundary();
      sink.append(*alt);
      sink.boundary();
    }
    return;
  }
  if (is_block(t.name)) sink.boundary();
}

struct PendingCell {
  int rowspan = 1;
  int colspan = 1;
  TextSink text;
};

}  // namespace

std::string html_text(std::string_view html) {
  TextSink sink;
  for (const Token& t : tokenize(html)) emit_inline(t, sink);
  return unicode::trim(sink.str());
}

NormalizedTable parse_table_html(std::string_view html) {
  const std::vector<Token> tokens = tokenize(html);

  std::vector<std::vector<PendingCell>> rows;
  int depth = 0;       // <table> nesting depth
  int top_level = 0;   // top-level tables seen so far
  bool row_open = false;
  bool in_caption = false;
  PendingCell* cell = nullptr;

  auto close_cell = [&] { cell = nullptr; };
  auto close_row = [&] {
    close_cell();
    row_open = false;
  };

  for (const Token& t : tokens) {
    const bool start = t.kind == Token::Kind::Start;
    const bool end = t.kind == Token::Kind::End;

    if ((start || end) && t.name == "table") {
      if (start) {
        if (depth == 0) {
          if (++top_level > 1) {
            throw Error(ErrorCode::MultipleTables,
                        "HTML holds more than one top-level <table>; use one element per table");
          }
        } else if (cell != nullptr) {
          cell->text.boundary();
        }
        ++depth;
      } else if (depth > 0) {
        --depth;
        if (depth == 0) {
          close_row();
          in_caption = false;
        } else if (cell != nullptr) {
          cell->text.boundary();
        }
      }
      continue;
    }
    if (depth == 0) continue;

    // Structure of the outermost table; nested tables are cell content.
    if (depth == 1 && (start || end)) {
      const std::string& name = t.name;
      if (name == "caption") {
        close_cell();
        in_caption = start;
        continue;
      }
      if (name == "thead" || name == "tbody" || name == "tfoot") {
        close_row();
        continue;
      }
      if (name == "tr") {
        close_row();
        if (start) {
          rows.emplace_back();
          row_open = true;
        }
        continue;
      }
      if (name == "td" || name == "th") {
        close_cell();
        if (start) {
          if (!row_open) {
            rows.emplace_back();
            row_open = true;
          }
          auto& current_row = rows.back();
          current_row.emplace_back();
          cell = &current_row.back();
          cell->rowspan = span_attribute(t, "rowspan");
          cell->colspan = span_attribute(t, "colspan");
        }
        continue;
      }
    }
    if (in_caption || cell == nullptr) continue;
    emit_inline(t, cell->text);
  }

  if (top_level == 0) throw Error(ErrorCode::NoTableFound, "no <table> element in HTML");

  // Grid filling: each cell takes the next free column in its row.
  const int n_rows = static_cast<int>(rows.size());
  std::map<int, std::vector<char>> occupied;
  auto is_taken = [&](int r, int c) {
    auto it = occupied.find(r);
    return it != occupied.end() && c < static_cast<int>(it->second.size()) &&
           it->second[static_cast<std::size_t>(c)] != 0;
  };
  std::vector<TableCell> cells;
  for (int r = 0; r < n_rows; ++r) {
    int col = 0;
    for (const PendingCell& pending : rows[static_cast<std::size_t>(r)]) {
      while (is_taken(r, col)) ++col;
      const int rowspan = std::min(pending.rowspan, n_rows - r);
      // A colspan running into a cell spanning down from above is cut short.
      int colspan = 1;
      while (colspan < pending.colspan && !is_taken(r, col + colspan)) ++colspan;
      for (int dr = 0; dr < rowspan; ++dr) {
        auto& line = occupied[r + dr];
        if (static_cast<int>(line.size()) < col + colspan) {
          line.resize(static_cast<std::size_t>(col + colspan), 0);
        }
        for (int dc = 0; dc < colspan; ++dc) line[static_cast<std::size_t>(col + dc)] = 1;
      }
      cells.push_back(TableCell{r, col, rowspan, colspan,
                                unicode::collapse_whitespace(pending.text.str())});
      col += colspan;
    }
  }
  return NormalizedTable(std::move(cells));
}

}  // namespace score
