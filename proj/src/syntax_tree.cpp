#include "tagbank/syntax_tree.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tagbank {

namespace {

const std::set<std::string>& ftag_inventory() {
  static const std::set<std::string> tags = {
      "ADV", "NOM", "DTV", "LGS", "PRD", "PUT", "SBJ", "TPC", "VOC",
      "BNF", "DIR", "EXT", "LOC", "MNR", "PRP", "TMP", "CLR", "CLF",
      "HLN", "SEZ", "TTL", "OBJ", "UNF", "ETC", "IMP"};
  return tags;
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

std::string Label::str() const {
  std::string out = category;
  for (const auto& t : ftags) {
    out += '-';
    out += t;
  }
  if (coindex) {
    out += '-';
    out += std::to_string(*coindex);
  }
  return out;
}

bool Label::has_ftag(const std::string& tag) const {
  return std::find(ftags.begin(), ftags.end(), tag) != ftags.end();
}

int SyntaxTree::first_token() const {
  if (is_preterminal()) return index;
  for (const auto& c : children) {
    int t = c.first_token();
    if (t > 0) return t;
  }
  return 0;
}

int SyntaxTree::last_token() const {
  if (is_preterminal()) return index;
  for (auto it = children.rbegin(); it != children.rend(); ++it) {
    int t = it->last_token();
    if (t > 0) return t;
  }
  return 0;
}

void SyntaxTree::yield(std::vector<const SyntaxTree*>& out) const {
  if (is_preterminal()) {
    out.push_back(this);
    return;
  }
  for (const auto& c : children) c.yield(out);
}

std::vector<const SyntaxTree*> SyntaxTree::leaves() const {
  std::vector<const SyntaxTree*> out;
  yield(out);
  return out;
}

bool SyntaxTree::operator==(const SyntaxTree& other) const {
  if (!(label == other.label) || token != other.token || mark != other.mark)
    return false;
  if (children.size() != other.children.size()) return false;
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!(children[i] == other.children[i])) return false;
  return true;
}

TreebankError::TreebankError(Code code, std::size_t position, const std::string& what)
    : std::runtime_error(what), code_(code), position_(position) {}

Label parse_label(const std::string& raw, std::size_t position) {
  if (raw.empty())
    throw TreebankError(TreebankError::Code::BadLabel, position, "empty label");
  Label out;
  std::string base = raw;
  // Gapping index "NP=2": fold the numeric tail into the coindex slot.
  auto eq = base.rfind('=');
  if (eq != std::string::npos && eq + 1 < base.size() &&
      all_digits(base.substr(eq + 1))) {
    out.coindex = std::stoi(base.substr(eq + 1));
    base = base.substr(0, eq);
  }

  std::vector<std::string> parts;
  std::string cur;
  for (char c : base) {
    if (c == '-') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  out.category = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& seg = parts[i];
    if (all_digits(seg)) {
      out.coindex = std::stoi(seg);
    } else if (ftag_inventory().count(seg)) {
      out.ftags.push_back(seg);
    } else {
      // Unknown suffix: part of a hyphenated category ("-LRB-" etc.).
      out.category += '-';
      out.category += seg;
    }
  }
  if (out.category.empty())
    throw TreebankError(TreebankError::Code::BadLabel, position,
                        "label without category: " + raw);
  return out;
}

namespace {

struct Reader {
  const std::string& text;
  std::size_t pos = 0;
  bool line_start = true;

  explicit Reader(const std::string& t) : text(t) {}

  void skip_ws_and_comments(int depth) {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        line_start = true;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '#' && line_start && depth == 0) {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        line_start = false;
        break;
      }
    }
  }

  bool eof() const { return pos >= text.size(); }

  std::string read_atom() {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  }
};

struct RawNode {
  bool is_atom = false;
  std::string atom;
  std::string label;
  std::size_t position = 0;
  std::vector<RawNode> children;
};

RawNode parse_raw(Reader& r, int depth) {
  r.skip_ws_and_comments(depth);
  if (r.eof())
    throw TreebankError(TreebankError::Code::UnbalancedBrackets, r.pos,
                        "unexpected end of input");
  if (r.text[r.pos] != '(') {
    RawNode n;
    n.is_atom = true;
    n.position = r.pos;
    n.atom = r.read_atom();
    return n;
  }
  RawNode n;
  n.position = r.pos;
  ++r.pos;  // '('
  r.skip_ws_and_comments(depth + 1);
  if (r.eof())
    throw TreebankError(TreebankError::Code::UnbalancedBrackets, r.pos,
                        "unclosed bracket");
  if (r.text[r.pos] != '(' && r.text[r.pos] != ')') n.label = r.read_atom();
  while (true) {
    r.skip_ws_and_comments(depth + 1);
    if (r.eof())
      throw TreebankError(TreebankError::Code::UnbalancedBrackets, r.pos,
                          "unclosed bracket");
    if (r.text[r.pos] == ')') {
      ++r.pos;
      break;
    }
    n.children.push_back(parse_raw(r, depth + 1));
  }
  return n;
}

SyntaxTree to_tree(const RawNode& raw, int& next_index) {
  if (raw.is_atom)
    throw TreebankError(TreebankError::Code::BadLabel, raw.position,
                        "bare token outside brackets: " + raw.atom);
  if (raw.children.empty())
    throw TreebankError(TreebankError::Code::EmptyPhrase, raw.position,
                        "phrase with no children");
  bool any_atom = false, any_node = false;
  for (const auto& c : raw.children) (c.is_atom ? any_atom : any_node) = true;
  if (any_atom && any_node)
    throw TreebankError(TreebankError::Code::BadLabel, raw.position,
                        "mixed token/phrase children under " + raw.label);
  SyntaxTree node;
  if (any_atom) {
    if (raw.children.size() != 1)
      throw TreebankError(TreebankError::Code::BadLabel, raw.position,
                          "pre-terminal with multiple tokens under " + raw.label);
    if (raw.label.empty())
      throw TreebankError(TreebankError::Code::BadLabel, raw.position,
                          "token without POS tag");
    node.label = Label(raw.label);  // POS kept raw, no ftag splitting
    node.token = raw.children[0].atom;
    node.index = ++next_index;
    return node;
  }
  if (raw.label.empty())
    throw TreebankError(TreebankError::Code::BadLabel, raw.position,
                        "unlabeled phrase");
  node.label = parse_label(raw.label, raw.position);
  for (const auto& c : raw.children) node.children.push_back(to_tree(c, next_index));
  return node;
}

}  // namespace

std::vector<SyntaxTree> parse_corpus(const std::string& text) {
  Reader r(text);
  std::vector<SyntaxTree> out;
  while (true) {
    r.skip_ws_and_comments(0);
    if (r.eof()) break;
    if (r.text[r.pos] != '(')
      throw TreebankError(TreebankError::Code::BadLabel, r.pos,
                          "expected '(' at top level");
    RawNode raw = parse_raw(r, 0);
    if (raw.label.empty() && !raw.children.empty() && !raw.children[0].is_atom) {
      // ".mrg"-style outer wrapper: "( (S ...) )".
      for (const auto& c : raw.children) {
        int idx = 0;
        out.push_back(to_tree(c, idx));
      }
    } else {
      int idx = 0;
      out.push_back(to_tree(raw, idx));
    }
  }
  return out;
}

std::vector<std::string> split_corpus(const std::string& text) {
  std::vector<std::string> segments;
  std::size_t pos = 0;
  bool line_start = true;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == '\n') {
      line_start = true;
      ++pos;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == '#' && line_start) {
      while (pos < text.size() && text[pos] != '\n') ++pos;
      continue;
    }
    line_start = false;
    std::size_t start = pos;
    int depth = 0;
    while (pos < text.size()) {
      char d = text[pos];
      if (d == '(') ++depth;
      if (d == ')') --depth;
      ++pos;
      if (depth <= 0) break;
    }
    segments.push_back(text.substr(start, pos - start));
  }
  return segments;
}

namespace {

void serialize_rec(const SyntaxTree& t, std::string& out) {
  if (t.is_preterminal()) {
    out += '(';
    out += t.label.category;
    out += ' ';
    out += t.token;
    out += ')';
    return;
  }
  out += '(';
  out += t.label.str();
  for (const auto& c : t.children) {
    out += ' ';
    serialize_rec(c, out);
  }
  out += ')';
}

}  // namespace

std::string serialize(const SyntaxTree& tree) {
  std::string out;
  serialize_rec(tree, out);
  return out;
}

}  // namespace tagbank
