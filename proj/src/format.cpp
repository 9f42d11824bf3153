#include "tagbank/format.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tagbank {

namespace {

void walk(const SyntaxTree& node,
          std::vector<std::pair<std::string, std::string>>& fields) {
  if (node.is_preterminal()) return;
  std::string cat = node.label.str();
  auto first = static_cast<std::size_t>(node.first_token() - 1);
  auto last = static_cast<std::size_t>(node.last_token() - 1);
  auto& rhs = fields[first].first;
  if (!rhs.empty()) rhs += ' ';
  rhs += '(' + cat;
  for (const auto& c : node.children) walk(c, fields);
  auto& lhs = fields[last].second;
  if (!lhs.empty()) lhs += ' ';
  lhs += ')' + cat;
}

std::string or_underscore(const std::string& s) { return s.empty() ? "_" : s; }

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::string::size_type start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string join_row(const TagbankRow& r) {
  return r.idx + '\t' + r.lex + '\t' + r.pos + '\t' + r.hd + '\t' + r.elem +
         '\t' + or_underscore(r.rhs) + '\t' + or_underscore(r.lhs);
}

bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

std::vector<std::string> bracket_items(const std::string& field) {
  std::vector<std::string> items;
  if (field == "_" || field.empty()) return items;
  std::istringstream in(field);
  std::string item;
  while (in >> item) items.push_back(item);
  return items;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::toupper(c));
  });
  return s;
}

// Rebuilds the derived tree from the interleaved rhs(i)·token(i)·lhs(i)
// bracket stream, reattaching a pre-terminal per token from the POS column.
SyntaxTree rebuild_tree(const std::vector<TagbankRow>& rows, int first_line) {
  std::vector<SyntaxTree> stack;
  SyntaxTree root;
  bool have_root = false;
  auto err = [&](const std::string& msg) {
    throw FormatError(FormatError::Code::UnbalancedFormat,
                      "sentence at line " + std::to_string(first_line) + ": " + msg);
  };

  auto attach = [&](SyntaxTree&& node) {
    if (!stack.empty()) {
      stack.back().children.push_back(std::move(node));
    } else if (!have_root) {
      root = std::move(node);
      have_root = true;
    } else {
      err("multiple root constituents");
    }
  };

  for (const auto& r : rows) {
    if (r.is_span()) continue;
    for (const auto& item : bracket_items(r.rhs)) {
      if (item.size() < 2 || item[0] != '(')
        err("malformed rhs item '" + item + "'");
      SyntaxTree node;
      node.label = parse_label(item.substr(1));
      stack.push_back(std::move(node));
    }
    SyntaxTree pre;
    pre.label = Label(upper(r.pos == "_" ? std::string("X") : r.pos));
    pre.token = r.lex;
    parse_int(r.idx, pre.index);
    attach(std::move(pre));
    for (const auto& item : bracket_items(r.lhs)) {
      if (item.size() < 2 || item[0] != ')')
        err("malformed lhs item '" + item + "'");
      if (stack.empty()) err("extra closing bracket '" + item + "'");
      if (stack.back().label.str() != item.substr(1))
        err("bracket mismatch: (" + stack.back().label.str() + " closed by " + item);
      SyntaxTree done = std::move(stack.back());
      stack.pop_back();
      attach(std::move(done));
    }
  }
  if (!stack.empty()) err("unclosed bracket (" + stack.back().label.str());
  if (!have_root) err("empty sentence");
  return root;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> linearize(const SyntaxTree& derived) {
  std::size_t n = derived.leaves().size();
  std::vector<std::pair<std::string, std::string>> fields(n);
  walk(derived, fields);
  return fields;
}

std::string emit_canonical(const std::vector<TagbankRow>& rows) {
  if (rows.empty()) return "";
  std::string out;
  for (const auto& r : rows) {
    out += join_row(r);
    out += '\n';
  }
  out += '\n';
  return out;
}

std::string emit_mwe(const std::vector<TagbankRow>& rows,
                     const std::vector<std::pair<int, int>>& spans) {
  std::vector<std::pair<int, int>> sorted = spans;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first <= sorted[i - 1].second)
      throw FormatError(FormatError::Code::OverlappingSpans,
                        "overlapping multiword spans " +
                            std::to_string(sorted[i - 1].first) + "-" +
                            std::to_string(sorted[i - 1].second) + " and " +
                            std::to_string(sorted[i].first) + "-" +
                            std::to_string(sorted[i].second));
  if (rows.empty()) return "";

  std::string out;
  std::size_t span_at = 0;
  for (const auto& r : rows) {
    int idx = 0;
    bool in_span = false;
    std::pair<int, int> span{0, 0};
    if (parse_int(r.idx, idx)) {
      while (span_at < sorted.size() && sorted[span_at].second < idx) ++span_at;
      if (span_at < sorted.size() && sorted[span_at].first <= idx &&
          idx <= sorted[span_at].second) {
        in_span = true;
        span = sorted[span_at];
      }
      if (in_span && idx == span.first) {
        TagbankRow span_row;
        span_row.idx =
            std::to_string(span.first) + "-" + std::to_string(span.second);
        std::string joined;
        for (const auto& m : rows) {
          int mi = 0;
          if (parse_int(m.idx, mi) && span.first <= mi && mi <= span.second) {
            if (!joined.empty()) joined += ' ';
            joined += m.lex;
          }
        }
        span_row.lex = joined;
        out += join_row(span_row);
        out += '\n';
      }
    }
    TagbankRow row = r;
    if (in_span && idx != span.first) {
      row.elem = "_";
      row.hd = std::to_string(span.first);
    }
    out += join_row(row);
    out += '\n';
  }
  out += '\n';
  return out;
}

std::vector<ParsedSentence> parse_tagbank(const std::string& text) {
  std::vector<ParsedSentence> out;
  std::vector<TagbankRow> rows;
  int line_no = 0;
  int first_line = 0;

  auto flush = [&]() {
    if (rows.empty()) return;
    ParsedSentence s;
    s.tree = rebuild_tree(rows, first_line);
    s.rows = std::move(rows);
    rows.clear();
    out.push_back(std::move(s));
  };

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#' && rows.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 7)
      throw FormatError(FormatError::Code::ColumnCount,
                        "line " + std::to_string(line_no) + ": expected 7 columns, got " +
                            std::to_string(cols.size()));
    TagbankRow r;
    r.idx = cols[0];
    r.lex = cols[1];
    r.pos = cols[2];
    r.hd = cols[3];
    r.elem = cols[4];
    r.rhs = cols[5];
    r.lhs = cols[6];
    int lo = 0, hi = 0;
    if (auto dash = r.idx.find('-'); dash != std::string::npos) {
      if (!parse_int(r.idx.substr(0, dash), lo) ||
          !parse_int(r.idx.substr(dash + 1), hi) || lo >= hi)
        throw FormatError(FormatError::Code::BadIndex,
                          "line " + std::to_string(line_no) + ": bad span index '" +
                              r.idx + "'");
    } else {
      if (!parse_int(r.idx, lo) || lo < 1)
        throw FormatError(FormatError::Code::BadIndex,
                          "line " + std::to_string(line_no) + ": bad token index '" +
                              r.idx + "'");
      int expected = 0;
      for (const auto& prev : rows)
        if (!prev.is_span()) ++expected;
      if (lo != expected + 1)
        throw FormatError(FormatError::Code::BadIndex,
                          "line " + std::to_string(line_no) + ": token index " +
                              r.idx + " breaks 1..n ordering");
    }
    if (rows.empty()) first_line = line_no;
    rows.push_back(std::move(r));
  }
  flush();
  return out;
}

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const auto& f : findings)
    out << "line " << f.line << ": " << (f.error ? "error" : "warning") << ": "
        << f.code << ": " << f.message << '\n';
  out << sentences << " sentence(s), " << findings.size() << " finding(s), "
      << (ok() ? "OK" : "INVALID") << '\n';
  return out.str();
}

ValidationReport validate_file(const std::string& text) {
  ValidationReport report;
  auto add = [&](int line, const std::string& code, const std::string& msg) {
    report.findings.push_back({line, true, code, msg});
  };

  struct Row {
    int line;
    TagbankRow r;
    int idx = 0;    // 0 for span rows
    int lo = 0, hi = 0;
  };
  std::vector<Row> rows;
  int first_line = 0;

  auto check_sentence = [&]() {
    if (rows.empty()) return;
    ++report.sentences;
    int n = 0;
    for (const auto& row : rows)
      if (row.idx > 0) ++n;

    // idx contiguity and span sanity
    int expect = 1;
    for (const auto& row : rows) {
      if (row.idx > 0) {
        if (row.idx != expect)
          add(row.line, "idx-gap",
              "token index " + row.r.idx + ", expected " + std::to_string(expect));
        else
          ++expect;
      } else {
        if (row.lo < 1 || row.hi > n || row.lo >= row.hi)
          add(row.line, "bad-span", "span " + row.r.idx + " outside 1.." +
                                        std::to_string(n));
        for (const auto& other : rows)
          if (other.idx == 0 && other.line < row.line &&
              other.hi >= row.lo)
            add(row.line, "overlapping-spans",
                "span " + row.r.idx + " overlaps " + other.r.idx);
      }
    }

    // hd range, single root, elem vocabulary
    std::vector<int> hd(static_cast<std::size_t>(n) + 1, -1);
    int roots = 0;
    for (const auto& row : rows) {
      if (row.idx == 0) {
        if (row.r.pos != "_" || row.r.hd != "_" || row.r.elem != "_" ||
            row.r.rhs != "_" || row.r.lhs != "_")
          add(row.line, "span-fields", "span row fields other than idx/lex must be _");
        continue;
      }
      int h = 0;
      if (!parse_int(row.r.hd, h) || h > n) {
        add(row.line, "bad-hd", "hd '" + row.r.hd + "' not in 0.." + std::to_string(n));
      } else {
        if (row.idx >= 1 && row.idx <= n) hd[static_cast<std::size_t>(row.idx)] = h;
        if (h == 0) ++roots;
        if (h == row.idx)
          add(row.line, "hd-self", "token " + row.r.idx + " is its own head");
      }
      if (row.r.elem != "alpha" && row.r.elem != "beta" && row.r.elem != "_")
        add(row.line, "bad-elem", "elem '" + row.r.elem + "' not alpha|beta|_");
    }
    if (roots != 1)
      add(first_line, "root-count",
          roots == 0 ? "no hd=0 root token" : "multiple roots (hd=0 twice)");

    // head-graph acyclicity
    for (int i = 1; i <= n; ++i) {
      int cur = i, steps = 0;
      while (cur >= 1 && cur <= n && hd[static_cast<std::size_t>(cur)] > 0 &&
             steps <= n) {
        cur = hd[static_cast<std::size_t>(cur)];
        ++steps;
      }
      if (steps > n) {
        add(first_line, "hd-cycle", "head pointers form a cycle through token " +
                                        std::to_string(i));
        break;
      }
    }

    // bracket balance of the interleaved stream
    std::vector<std::string> stack;
    bool balanced = true;
    for (const auto& row : rows) {
      if (row.idx == 0) continue;
      for (const auto& item : bracket_items(row.r.rhs)) {
        if (item.size() < 2 || item[0] != '(') {
          add(row.line, "bad-rhs", "rhs item '" + item + "' is not (LABEL");
          balanced = false;
        } else {
          stack.push_back(item.substr(1));
        }
      }
      for (const auto& item : bracket_items(row.r.lhs)) {
        if (item.size() < 2 || item[0] != ')') {
          add(row.line, "bad-lhs", "lhs item '" + item + "' is not )LABEL");
          balanced = false;
        } else if (stack.empty() || stack.back() != item.substr(1)) {
          add(row.line, "unbalanced-brackets",
              "closing " + item + " does not match the open constituent");
          balanced = false;
          if (!stack.empty()) stack.pop_back();
        } else {
          stack.pop_back();
        }
      }
    }
    if (balanced && !stack.empty())
      add(first_line, "unbalanced-brackets",
          "constituent (" + stack.back() + " never closed");
    rows.clear();
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      check_sentence();
      continue;
    }
    if (line[0] == '#' && rows.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 7) {
      add(line_no, "column-count",
          "expected 7 tab-separated columns, got " + std::to_string(cols.size()));
      continue;
    }
    Row row;
    row.line = line_no;
    row.r.idx = cols[0];
    row.r.lex = cols[1];
    row.r.pos = cols[2];
    row.r.hd = cols[3];
    row.r.elem = cols[4];
    row.r.rhs = cols[5];
    row.r.lhs = cols[6];
    if (auto dash = row.r.idx.find('-'); dash != std::string::npos) {
      if (!parse_int(row.r.idx.substr(0, dash), row.lo) ||
          !parse_int(row.r.idx.substr(dash + 1), row.hi)) {
        add(line_no, "bad-idx", "span index '" + row.r.idx + "' is not i-j");
        continue;
      }
    } else if (!parse_int(row.r.idx, row.idx) || row.idx < 1) {
      add(line_no, "bad-idx", "token index '" + row.r.idx + "' is not a positive integer");
      continue;
    }
    if (rows.empty()) first_line = line_no;
    rows.push_back(std::move(row));
  }
  check_sentence();
  return report;
}

}  // namespace tagbank
